// One map pane: polygons as SVG over a plain grid (the offline basemap
// fallback), semi-transparent per-category fills, orange border on the
// selected/highlighted polygons, plus the point-by-point draw tool.
import { SELECTION_ORANGE, categoryColors } from "./colors.js";
const SVG_NS = "http://www.w3.org/2000/svg";
export class MapPane {
    constructor(container, paneId, state, options = {}) {
        this.container = container;
        this.paneId = paneId;
        this.state = state;
        this.polygons = [];
        this.drawKind = null;
        this.draftPoints = [];
        this.width = options.width ?? 600;
        this.height = options.height ?? 440;
        this.colorOverrides = options.colorOverrides ?? {};
        this.onDraftComplete = options.onDraftComplete;
        this.svg = document.createElementNS(SVG_NS, "svg");
        this.svg.setAttribute("viewBox", `0 0 ${this.width} ${this.height}`);
        this.svg.setAttribute("class", "map-pane-svg");
        this.svg.dataset.paneId = String(paneId);
        container.appendChild(this.svg);
        this.svg.addEventListener("click", (event) => this.onClick(event));
        this.svg.addEventListener("wheel", (event) => this.onWheel(event));
        container.ownerDocument.addEventListener("keydown", (event) => {
            if (event.key === "Escape")
                this.cancelDraw();
        });
        this.unsubscribe = state.subscribe(() => this.render());
        this.render();
    }
    dispose() {
        this.unsubscribe();
        this.svg.remove();
    }
    setPolygons(polygons) {
        this.polygons = polygons;
        this.render();
    }
    // -- coordinate transforms -------------------------------------------------
    toPixel(lon, lat) {
        const box = this.state.viewport(this.paneId);
        const x = ((lon - box.minLon) / (box.maxLon - box.minLon)) * this.width;
        const y = this.height - ((lat - box.minLat) / (box.maxLat - box.minLat)) * this.height;
        return [x, y];
    }
    toLonLat(x, y) {
        const box = this.state.viewport(this.paneId);
        const lon = box.minLon + (x / this.width) * (box.maxLon - box.minLon);
        const lat = box.minLat + ((this.height - y) / this.height) * (box.maxLat - box.minLat);
        return [lon, lat];
    }
    pan(dLonFraction, dLatFraction) {
        const box = this.state.viewport(this.paneId);
        const dLon = (box.maxLon - box.minLon) * dLonFraction;
        const dLat = (box.maxLat - box.minLat) * dLatFraction;
        this.state.setViewport(this.paneId, {
            minLon: box.minLon + dLon,
            maxLon: box.maxLon + dLon,
            minLat: box.minLat + dLat,
            maxLat: box.maxLat + dLat,
        });
    }
    zoom(factor) {
        const box = this.state.viewport(this.paneId);
        const cx = (box.minLon + box.maxLon) / 2;
        const cy = (box.minLat + box.maxLat) / 2;
        const halfLon = ((box.maxLon - box.minLon) / 2) * factor;
        const halfLat = ((box.maxLat - box.minLat) / 2) * factor;
        this.state.setViewport(this.paneId, {
            minLon: cx - halfLon,
            maxLon: cx + halfLon,
            minLat: cy - halfLat,
            maxLat: cy + halfLat,
        });
    }
    onWheel(event) {
        event.preventDefault();
        this.zoom(event.deltaY > 0 ? 1.25 : 0.8);
    }
    // -- drawing tool -----------------------------------------------------------
    startDraw(kind) {
        this.drawKind = kind;
        this.draftPoints = [];
        this.render();
    }
    get drawing() {
        return this.drawKind !== null;
    }
    get draft() {
        return [...this.draftPoints];
    }
    /** Append a draft point; closing an area (clicking near the first point)
     * or finishing a path hands the draft to the callback. */
    addDraftPoint(lon, lat) {
        if (!this.drawKind)
            return;
        if (this.drawKind === "area" &&
            this.draftPoints.length >= 3 &&
            this.isNearFirstPoint(lon, lat)) {
            this.finishDraw();
            return;
        }
        this.draftPoints.push([lon, lat]);
        this.render();
    }
    isNearFirstPoint(lon, lat) {
        if (this.draftPoints.length === 0)
            return false;
        const [x0, y0] = this.toPixel(this.draftPoints[0][0], this.draftPoints[0][1]);
        const [x, y] = this.toPixel(lon, lat);
        return Math.hypot(x - x0, y - y0) < 12;
    }
    finishDraw() {
        if (!this.drawKind)
            return;
        const minimum = this.drawKind === "area" ? 3 : 2;
        if (this.draftPoints.length < minimum)
            return;
        const draft = { points: [...this.draftPoints], kind: this.drawKind };
        this.drawKind = null;
        this.draftPoints = [];
        this.render();
        this.onDraftComplete?.(draft);
    }
    cancelDraw() {
        if (!this.drawKind)
            return;
        this.drawKind = null;
        this.draftPoints = [];
        this.render();
    }
    onClick(event) {
        const rect = this.svg.getBoundingClientRect();
        const x = event.clientX - rect.left;
        const y = event.clientY - rect.top;
        if (this.drawKind) {
            const [lon, lat] = this.toLonLat(x, y);
            this.addDraftPoint(lon, lat);
            return;
        }
        const target = event.target;
        const polygonId = target?.getAttribute?.("data-polygon-id");
        this.state.selectPolygon(polygonId ?? null);
    }
    // -- rendering ----------------------------------------------------------------
    render() {
        while (this.svg.firstChild)
            this.svg.removeChild(this.svg.firstChild);
        this.renderGrid();
        const highlighted = this.state.highlightedIds();
        const colors = categoryColors(this.polygons.map((p) => p.category), this.colorOverrides);
        for (const polygon of this.polygons) {
            if (!this.state.isCategoryVisible(polygon.category))
                continue;
            const pixels = polygon.ring.map(([lon, lat]) => this.toPixel(lon, lat));
            const path = document.createElementNS(SVG_NS, "polygon");
            path.setAttribute("points", pixels.map(([x, y]) => `${x},${y}`).join(" "));
            const color = colors.get(polygon.category) ?? "#999999";
            path.setAttribute("fill", color);
            path.setAttribute("fill-opacity", "0.45");
            path.setAttribute("data-polygon-id", polygon.id);
            path.setAttribute("data-category", polygon.category);
            if (highlighted.has(polygon.id)) {
                path.setAttribute("stroke", SELECTION_ORANGE);
                path.setAttribute("stroke-width", "3");
                path.setAttribute("class", "polygon selected");
            }
            else {
                path.setAttribute("stroke", color);
                path.setAttribute("stroke-width", "1");
                path.setAttribute("class", "polygon");
            }
            this.svg.appendChild(path);
        }
        this.renderDraft();
    }
    renderGrid() {
        const background = document.createElementNS(SVG_NS, "rect");
        background.setAttribute("width", String(this.width));
        background.setAttribute("height", String(this.height));
        background.setAttribute("fill", "#eef0f2");
        this.svg.appendChild(background);
        for (let x = 0; x <= this.width; x += 40) {
            const line = document.createElementNS(SVG_NS, "line");
            line.setAttribute("x1", String(x));
            line.setAttribute("y1", "0");
            line.setAttribute("x2", String(x));
            line.setAttribute("y2", String(this.height));
            line.setAttribute("stroke", "#ffffff");
            line.setAttribute("stroke-width", "1");
            this.svg.appendChild(line);
        }
        for (let y = 0; y <= this.height; y += 40) {
            const line = document.createElementNS(SVG_NS, "line");
            line.setAttribute("x1", "0");
            line.setAttribute("y1", String(y));
            line.setAttribute("x2", String(this.width));
            line.setAttribute("y2", String(y));
            line.setAttribute("stroke", "#ffffff");
            line.setAttribute("stroke-width", "1");
            this.svg.appendChild(line);
        }
    }
    renderDraft() {
        if (!this.drawKind || this.draftPoints.length === 0)
            return;
        const pixels = this.draftPoints.map(([lon, lat]) => this.toPixel(lon, lat));
        const preview = document.createElementNS(SVG_NS, "polyline");
        preview.setAttribute("points", pixels.map(([x, y]) => `${x},${y}`).join(" "));
        preview.setAttribute("fill", "none");
        preview.setAttribute("stroke", SELECTION_ORANGE);
        preview.setAttribute("stroke-width", "2");
        preview.setAttribute("stroke-dasharray", "6,4");
        preview.setAttribute("class", "draft-preview");
        this.svg.appendChild(preview);
        for (const [x, y] of pixels) {
            const dot = document.createElementNS(SVG_NS, "circle");
            dot.setAttribute("cx", String(x));
            dot.setAttribute("cy", String(y));
            dot.setAttribute("r", "4");
            dot.setAttribute("fill", SELECTION_ORANGE);
            dot.setAttribute("class", "draft-point");
            this.svg.appendChild(dot);
        }
    }
}
export function draftToRequestBody(draft, name, category, width) {
    const body = {
        points: draft.points,
        kind: draft.kind,
        category,
        name,
    };
    if (width !== undefined)
        body.width = width;
    return body;
}
export function viewportToBboxString(box) {
    return `${box.minLon},${box.minLat},${box.maxLon},${box.maxLat}`;
}
