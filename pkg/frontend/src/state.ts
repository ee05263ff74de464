// Shared view state behind all panes. Linking, selection, brushing, and
// layer toggles live here; panes subscribe and re-render on change.
//
// Invariants kept by construction:
//   - with linkedPanes on, every pane viewport is identical
//   - the highlighted polygon set is one shared set (selection coherence)

import type { BBox, TimeRange } from "./types.js";

export interface Filters {
  klass: string | null;
  category: string | null;
}

export type Listener = () => void;

export const MAX_PANES = 4;

export const DEFAULT_VIEWPORT: BBox = {
  minLon: 12.38,
  minLat: 51.18,
  maxLon: 12.58,
  maxLat: 51.36,
};

export function bboxEquals(a: BBox, b: BBox): boolean {
  return (
    a.minLon === b.minLon &&
    a.minLat === b.minLat &&
    a.maxLon === b.maxLon &&
    a.maxLat === b.maxLat
  );
}

export class ViewState {
  panes = new Map<number, BBox>();
  linkedPanes = true;
  hiddenCategories = new Set<string>();
  selectedPolygonId: string | null = null;
  brushedTimeRange: TimeRange | null = null;
  brushHighlightIds: string[] = [];
  filters: Filters = { klass: null, category: null };

  private nextPaneId = 1;
  private listeners: Listener[] = [];

  constructor(paneCount = 2, viewport: BBox = DEFAULT_VIEWPORT) {
    for (let i = 0; i < paneCount; i++) {
      this.panes.set(this.nextPaneId++, { ...viewport });
    }
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  paneIds(): number[] {
    return [...this.panes.keys()];
  }

  viewport(paneId: number): BBox {
    const box = this.panes.get(paneId);
    if (!box) throw new Error(`no pane ${paneId}`);
    return box;
  }

  addPane(): number | null {
    if (this.panes.size >= MAX_PANES) return null;
    const reference = this.panes.values().next().value ?? DEFAULT_VIEWPORT;
    const id = this.nextPaneId++;
    this.panes.set(id, { ...reference });
    this.notify();
    return id;
  }

  removePane(paneId: number): void {
    if (this.panes.size <= 1) return;
    this.panes.delete(paneId);
    this.notify();
  }

  setViewport(paneId: number, viewport: BBox): void {
    if (!this.panes.has(paneId)) throw new Error(`no pane ${paneId}`);
    if (this.linkedPanes) {
      for (const id of this.panes.keys()) this.panes.set(id, { ...viewport });
    } else {
      this.panes.set(paneId, { ...viewport });
    }
    this.notify();
  }

  setLinked(linked: boolean): void {
    this.linkedPanes = linked;
    if (linked && this.panes.size > 0) {
      // snap everyone to the first pane's viewport
      const reference = this.panes.values().next().value!;
      for (const id of this.panes.keys()) this.panes.set(id, { ...reference });
    }
    this.notify();
  }

  linkageHolds(): boolean {
    if (!this.linkedPanes) return true;
    const boxes = [...this.panes.values()];
    return boxes.every((b) => bboxEquals(b, boxes[0]));
  }

  selectPolygon(polygonId: string | null): void {
    this.selectedPolygonId = polygonId;
    this.notify();
  }

  /** Every polygon that should carry the orange border, on every pane. */
  highlightedIds(): Set<string> {
    const ids = new Set(this.brushHighlightIds);
    if (this.selectedPolygonId) ids.add(this.selectedPolygonId);
    return ids;
  }

  setBrush(range: TimeRange | null, polygonIds: string[] = []): void {
    this.brushedTimeRange = range;
    this.brushHighlightIds = range === null ? [] : [...polygonIds];
    this.notify();
  }

  setCategoryVisible(
    category: string,
    visible: boolean,
    categoryOf: (polygonId: string) => string | undefined = () => undefined,
  ): void {
    if (visible) {
      this.hiddenCategories.delete(category);
    } else {
      this.hiddenCategories.add(category);
      // hiding the selected polygon's layer clears the selection
      if (
        this.selectedPolygonId &&
        categoryOf(this.selectedPolygonId) === category
      ) {
        this.selectedPolygonId = null;
      }
    }
    this.notify();
  }

  isCategoryVisible(category: string): boolean {
    return !this.hiddenCategories.has(category);
  }

  setClassFilter(klass: string | null): void {
    this.filters = { ...this.filters, klass };
    this.notify();
  }

  setCategoryFilter(category: string | null): void {
    this.filters = { ...this.filters, category };
    this.notify();
  }
}

const DAY_MS = 86_400_000;

/** Bucket granularity from the zoomed range width. */
export function pickLod(range: TimeRange): "decade" | "year" | "quarter" | "month" | "day" {
  const days =
    (Date.parse(range.end + "T00:00:00Z") - Date.parse(range.start + "T00:00:00Z")) /
    DAY_MS;
  if (days > 20 * 365) return "decade";
  if (days > 3 * 365) return "year";
  if (days > 365) return "quarter";
  if (days > 61) return "month";
  return "day";
}

/** Does a bucket start date sit on its level's boundary? */
export function isAligned(lod: string, isoDate: string): boolean {
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
