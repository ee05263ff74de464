"""Small dynamic R-tree over degree-space bounding boxes.

Quadratic split, least-enlargement descent. Boxes are
(min_lon, min_lat, max_lon, max_lat) tuples.
"""

from __future__ import annotations


def _union(a, b):
    return (min(a[0], b[0]), min(a[1], b[1]), max(a[2], b[2]), max(a[3], b[3]))


def _area(b):
    return max(0.0, b[2] - b[0]) * max(0.0, b[3] - b[1])


def _intersects(a, b):
    return not (a[2] < b[0] or b[2] < a[0] or a[3] < b[1] or b[3] < a[1])


class _Node:
    __slots__ = ("leaf", "entries", "bbox")

    def __init__(self, leaf: bool):
        self.leaf = leaf
        self.entries: list = []  # leaf: (bbox, item_id); inner: (bbox, _Node)
        self.bbox = None

    def recompute_bbox(self):
        if not self.entries:
            self.bbox = None
            return
        box = self.entries[0][0]
        for b, _ in self.entries[1:]:
            box = _union(box, b)
        self.bbox = box


class RTree:
    def __init__(self, max_entries: int = 8):
        self.max_entries = max_entries
        self.root = _Node(leaf=True)
        self._count = 0

    def __len__(self) -> int:
        return self._count

    def insert(self, item_id, bbox) -> None:
        split = self._insert(self.root, bbox, item_id)
        if split is not None:
            old_root = self.root
            self.root = _Node(leaf=False)
            self.root.entries = [(old_root.bbox, old_root), (split.bbox, split)]
            self.root.recompute_bbox()
        self._count += 1

    def _insert(self, node: _Node, bbox, item_id):
        if node.leaf:
            node.entries.append((bbox, item_id))
        else:
            best_i = None
            best_cost = None
            for i, (child_box, _child) in enumerate(node.entries):
                enlarged = _area(_union(child_box, bbox)) - _area(child_box)
                cost = (enlarged, _area(child_box))
                if best_cost is None or cost < best_cost:
                    best_cost = cost
                    best_i = i
            child_box, child = node.entries[best_i]
            split = self._insert(child, bbox, item_id)
            node.entries[best_i] = (child.bbox, child)
            if split is not None:
                node.entries.append((split.bbox, split))
        node.recompute_bbox()
        if len(node.entries) > self.max_entries:
            return self._split(node)
        return None

    def _split(self, node: _Node):
        entries = node.entries
        # quadratic pick-seeds: the pair wasting the most area together
        worst = (-1.0, 0, 1)
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                waste = _area(_union(entries[i][0], entries[j][0])) - _area(
                    entries[i][0]
                ) - _area(entries[j][0])
                if waste > worst[0]:
                    worst = (waste, i, j)
        _, i, j = worst
        group_a = [entries[i]]
        group_b = [entries[j]]
        rest = [e for k, e in enumerate(entries) if k not in (i, j)]
        box_a = group_a[0][0]
        box_b = group_b[0][0]
        for e in rest:
            grow_a = _area(_union(box_a, e[0])) - _area(box_a)
            grow_b = _area(_union(box_b, e[0])) - _area(box_b)
            if grow_a <= grow_b:
                group_a.append(e)
                box_a = _union(box_a, e[0])
            else:
                group_b.append(e)
                box_b = _union(box_b, e[0])
        node.entries = group_a
        node.recompute_bbox()
        sibling = _Node(leaf=node.leaf)
        sibling.entries = group_b
        sibling.recompute_bbox()
        return sibling

    def search(self, bbox) -> list:
        """All item ids whose boxes intersect ``bbox``."""
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.bbox is None or not _intersects(node.bbox, bbox):
                continue
            for entry_box, payload in node.entries:
                if not _intersects(entry_box, bbox):
                    continue
                if node.leaf:
                    out.append(payload)
                else:
                    stack.append(payload)
        return out

    def remove(self, item_id, bbox) -> bool:
        """Remove one entry; returns False when it was not present."""
        return self._remove(self.root, item_id, bbox)

    def _remove(self, node: _Node, item_id, bbox) -> bool:
        if node.bbox is None or not _intersects(node.bbox, bbox):
            return False
        if node.leaf:
            for i, (_b, payload) in enumerate(node.entries):
                if payload == item_id:
                    node.entries.pop(i)
                    node.recompute_bbox()
                    self._count -= 1
                    return True
            return False
        for i, (_b, child) in enumerate(node.entries):
            if self._remove(child, item_id, bbox):
                if child.bbox is None:
                    node.entries.pop(i)
                else:
                    node.entries[i] = (child.bbox, child)
                node.recompute_bbox()
                return True
        return False

    def all_items(self) -> list:
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            for _b, payload in node.entries:
                if node.leaf:
                    out.append(payload)
                else:
                    stack.append(payload)
        return out
