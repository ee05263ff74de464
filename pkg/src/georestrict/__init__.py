"""Geospatial-temporal restriction engine.

Extracts dated legal restrictions from georeferenced text documents,
links them to polygons in an embedded graph store with precomputed
overlaps, and answers planning queries (timeline aggregation, overlap
reports for newly drawn project areas) over an HTTP API and CLI.
"""

__version__ = "0.1.0"
