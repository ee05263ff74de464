// Green-bar timeline pane. The document count per bucket comes straight
// from the API; zooming narrows the range, which switches the level of
// detail. Clicking a bar or brushing an interval selects the documents in
// that range and highlights their polygons on every map pane.

import type { ApiClient } from "./api.js";
import { BAR_GREEN } from "./colors.js";
import { isAligned, pickLod, type ViewState } from "./state.js";
import type { SelectedDocumentJson, TimeRange, TimelineBucketJson } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface TimelinePaneOptions {
  width?: number;
  height?: number;
  onBrushDocuments?: (range: TimeRange, documents: SelectedDocumentJson[]) => void;
  onError?: (message: string) => void;
  /** Supplies the current map viewport bbox when the viewport filter is on. */
  viewportBbox?: () => string | null;
}

export class TimelinePane {
  readonly svg: SVGSVGElement;
  range: TimeRange;
  lod: string;
  buckets: TimelineBucketJson[] = [];
  viewportFilter = false;

  private readonly width: number;
  private readonly height: number;

  constructor(
    readonly container: HTMLElement,
    private readonly state: ViewState,
    private readonly api: ApiClient,
    initialRange: TimeRange,
    private readonly options: TimelinePaneOptions = {},
  ) {
    this.width = options.width ?? 1200;
    this.height = options.height ?? 160;
    this.range = { ...initialRange };
    this.lod = pickLod(this.range);
    this.svg = document.createElementNS(SVG_NS, "svg") as SVGSVGElement;
    this.svg.setAttribute("viewBox", `0 0 ${this.width} ${this.height}`);
    this.svg.setAttribute("class", "timeline-svg");
    container.appendChild(this.svg);
  }

  async refresh(): Promise<void> {
    this.lod = pickLod(this.range);
    try {
      const response = await this.api.getTimeline({
        from: this.range.start,
        to: this.range.end,
        lod: this.lod,
        klass: this.state.filters.klass,
        bbox: this.viewportFilter ? (this.options.viewportBbox?.() ?? null) : null,
        category: this.state.filters.category,
      });
      this.lod = response.lod;
      this.buckets = response.buckets;
      this.render();
    } catch (err) {
      this.options.onError?.(String(err));
    }
  }

  async zoomTo(range: TimeRange): Promise<void> {
    this.range = { ...range };
    await this.refresh();
  }

  /** Brush an interval: fetch its documents and highlight their polygons. */
  async brush(range: TimeRange): Promise<SelectedDocumentJson[]> {
    try {
      const response = await this.api.getTimelineSelect({
        from: range.start,
        to: range.end,
        klass: this.state.filters.klass,
        bbox: this.viewportFilter ? (this.options.viewportBbox?.() ?? null) : null,
        category: this.state.filters.category,
      });
      const polygonIds = [
        ...new Set(response.documents.flatMap((d) => d.polygonIds)),
      ].sort();
      this.state.setBrush(range, polygonIds);
      this.options.onBrushDocuments?.(range, response.documents);
      return response.documents;
    } catch (err) {
      this.options.onError?.(String(err));
      return [];
    }
  }

  clearBrush(): void {
    this.state.setBrush(null);
  }

  bucketRange(bucketStart: string): TimeRange {
    const index = this.buckets.findIndex((b) => b.start === bucketStart);
    const next = this.buckets[index + 1];
    if (next) {
      return { start: bucketStart, end: previousDay(next.start) };
    }
    return { start: bucketStart, end: this.range.end };
  }

  render(): void {
    while (this.svg.firstChild) this.svg.removeChild(this.svg.firstChild);
    const max = Math.max(1, ...this.buckets.map((b) => b.count));
    const slot = this.width / Math.max(1, this.buckets.length);
    const barWidth = Math.max(1, slot * 0.85);
    const plotHeight = this.height - 18;

    this.buckets.forEach((bucket, index) => {
      const barHeight = (bucket.count / max) * plotHeight;
      const rect = document.createElementNS(SVG_NS, "rect");
      rect.setAttribute("x", String(index * slot + (slot - barWidth) / 2));
      rect.setAttribute("y", String(plotHeight - barHeight));
      rect.setAttribute("width", String(barWidth));
      rect.setAttribute("height", String(barHeight));
      rect.setAttribute("fill", BAR_GREEN);
      rect.setAttribute("class", "timeline-bar");
      rect.setAttribute("data-start", bucket.start);
      rect.setAttribute("data-count", String(bucket.count));
      rect.setAttribute("data-lod", this.lod);
      rect.addEventListener("click", () => {
        void this.brush(this.bucketRange(bucket.start));
      });
      this.svg.appendChild(rect);
    });

    const axis = document.createElementNS(SVG_NS, "line");
    axis.setAttribute("x1", "0");
    axis.setAttribute("y1", String(plotHeight));
    axis.setAttribute("x2", String(this.width));
    axis.setAttribute("y2", String(plotHeight));
    axis.setAttribute("stroke", "#667");
    this.svg.appendChild(axis);
  }

  /** All rendered bucket starts sit on their level's boundary. */
  bucketsAligned(): boolean {
    return this.buckets.every((b) => isAligned(this.lod, b.start));
  }
}

function previousDay(isoDate: string): string {
  const t = Date.parse(isoDate + "T00:00:00Z") - 86_400_000;
  return new Date(t).toISOString().slice(0, 10);
}
