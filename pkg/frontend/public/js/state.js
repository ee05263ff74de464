// Shared view state behind all panes. Linking, selection, brushing, and
// layer toggles live here; panes subscribe and re-render on change.
//
// Invariants kept by construction:
//   - with linkedPanes on, every pane viewport is identical
//   - the highlighted polygon set is one shared set (selection coherence)
export const MAX_PANES = 4;
export const DEFAULT_VIEWPORT = {
    minLon: 12.38,
    minLat: 51.18,
    maxLon: 12.58,
    maxLat: 51.36,
};
export function bboxEquals(a, b) {
    return (a.minLon === b.minLon &&
        a.minLat === b.minLat &&
        a.maxLon === b.maxLon &&
        a.maxLat === b.maxLat);
}
export class ViewState {
    constructor(paneCount = 2, viewport = DEFAULT_VIEWPORT) {
        this.panes = new Map();
        this.linkedPanes = true;
        this.hiddenCategories = new Set();
        this.selectedPolygonId = null;
        this.brushedTimeRange = null;
        this.brushHighlightIds = [];
        this.filters = { klass: null, category: null };
        this.nextPaneId = 1;
        this.listeners = [];
        for (let i = 0; i < paneCount; i++) {
            this.panes.set(this.nextPaneId++, { ...viewport });
        }
    }
    subscribe(listener) {
        this.listeners.push(listener);
        return () => {
            this.listeners = this.listeners.filter((l) => l !== listener);
        };
    }
    notify() {
        for (const listener of this.listeners)
            listener();
    }
    paneIds() {
        return [...this.panes.keys()];
    }
    viewport(paneId) {
        const box = this.panes.get(paneId);
        if (!box)
            throw new Error(`no pane ${paneId}`);
        return box;
    }
    addPane() {
        if (this.panes.size >= MAX_PANES)
            return null;
        const reference = this.panes.values().next().value ?? DEFAULT_VIEWPORT;
        const id = this.nextPaneId++;
        this.panes.set(id, { ...reference });
        this.notify();
        return id;
    }
    removePane(paneId) {
        if (this.panes.size <= 1)
            return;
        this.panes.delete(paneId);
        this.notify();
    }
    setViewport(paneId, viewport) {
        if (!this.panes.has(paneId))
            throw new Error(`no pane ${paneId}`);
        if (this.linkedPanes) {
            for (const id of this.panes.keys())
                this.panes.set(id, { ...viewport });
        }
        else {
            this.panes.set(paneId, { ...viewport });
        }
        this.notify();
    }
    setLinked(linked) {
        this.linkedPanes = linked;
        if (linked && this.panes.size > 0) {
            // snap everyone to the first pane's viewport
            const reference = this.panes.values().next().value;
            for (const id of this.panes.keys())
                this.panes.set(id, { ...reference });
        }
        this.notify();
    }
    linkageHolds() {
        if (!this.linkedPanes)
            return true;
        const boxes = [...this.panes.values()];
        return boxes.every((b) => bboxEquals(b, boxes[0]));
    }
    selectPolygon(polygonId) {
        this.selectedPolygonId = polygonId;
        this.notify();
    }
    /** Every polygon that should carry the orange border, on every pane. */
    highlightedIds() {
        const ids = new Set(this.brushHighlightIds);
        if (this.selectedPolygonId)
            ids.add(this.selectedPolygonId);
        return ids;
    }
    setBrush(range, polygonIds = []) {
        this.brushedTimeRange = range;
        this.brushHighlightIds = range === null ? [] : [...polygonIds];
        this.notify();
    }
    setCategoryVisible(category, visible, categoryOf = () => undefined) {
        if (visible) {
            this.hiddenCategories.delete(category);
        }
        else {
            this.hiddenCategories.add(category);
            // hiding the selected polygon's layer clears the selection
            if (this.selectedPolygonId &&
                categoryOf(this.selectedPolygonId) === category) {
                this.selectedPolygonId = null;
            }
        }
        this.notify();
    }
    isCategoryVisible(category) {
        return !this.hiddenCategories.has(category);
    }
    setClassFilter(klass) {
        this.filters = { ...this.filters, klass };
        this.notify();
    }
    setCategoryFilter(category) {
        this.filters = { ...this.filters, category };
        this.notify();
    }
}
const DAY_MS = 86400000;
/** Bucket granularity from the zoomed range width. */
export function pickLod(range) {
    const days = (Date.parse(range.end + "T00:00:00Z") - Date.parse(range.start + "T00:00:00Z")) /
        DAY_MS;
    if (days > 20 * 365)
        return "decade";
    if (days > 3 * 365)
        return "year";
    if (days > 365)
        return "quarter";
    if (days > 61)
        return "month";
    return "day";
}
/** Does a bucket start date sit on its level's boundary? */
export function isAligned(lod, isoDate) {
    const [year, month, day] = isoDate.split("-").map(Number);
    switch (lod) {
        case "decade":
            return year % 10 === 0 && month === 1 && day === 1;
        case "year":
            return month === 1 && day === 1;
        case "quarter":
            return [1, 4, 7, 10].includes(month) && day === 1;
        case "month":
            return day === 1;
        default:
            return true;
    }
}
