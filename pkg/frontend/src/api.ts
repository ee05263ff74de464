// Typed client over the documented API routes. Every request the UI makes
// goes through this module, which is what the route-contract test leans on.

import type {
  ClassesResponse,
  ExtentJson,
  OverlapReportJson,
  OverlapsResponse,
  PolygonJson,
  ProjectDraftJson,
  RestrictionsResponse,
  TimelineResponse,
  TimelineSelectResponse,
} from "./types.js";

export interface TimelineParams {
  from: string;
  to: string;
  lod: string;
  klass?: string | null;
  bbox?: string | null;
  category?: string | null;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

export class ApiClient {
  constructor(private baseUrl: string = "") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await fetch(this.baseUrl + path, init);
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiError(
        payload.status ?? response.status,
        payload.code ?? "io",
        payload.message ?? `request failed: ${method} ${path}`,
      );
    }
    return payload as T;
  }

  private query(params: Record<string, string | null | undefined>): string {
    const search = new URLSearchParams();
    for (const [key, value] of Object.entries(params)) {
      if (value !== undefined && value !== null && value !== "") {
        search.append(key, value);
      }
    }
    const encoded = search.toString();
    return encoded ? `?${encoded}` : "";
  }

  getPolygons(opts: { bbox?: string | null; category?: string | null } = {}) {
    return this.request<{ polygons: PolygonJson[] }>(
      "GET",
      "/api/polygons" + this.query({ bbox: opts.bbox, category: opts.category }),
    );
  }

  postPolygon(polygon: PolygonJson & { name?: string }) {
    return this.request<{ id: string; overlaps: { polygonId: string; area: number }[] }>(
      "POST",
      "/api/polygons",
      polygon,
    );
  }

  postDocument(body: { polygonIds: string[]; title: string; text: string; id?: string }) {
    return this.request<{ docId: string }>("POST", "/api/documents", body);
  }

  getOverlaps(polygonId: string) {
    return this.request<OverlapsResponse>(
      "GET",
      `/api/polygons/${encodeURIComponent(polygonId)}/overlaps`,
    );
  }

  getRestrictions(polygonId: string, at?: string | null) {
    return this.request<RestrictionsResponse>(
      "GET",
      `/api/polygons/${encodeURIComponent(polygonId)}/restrictions` + this.query({ at }),
    );
  }

  patchRestriction(refId: string, extent: ExtentJson) {
    return this.request<{ refId: string; extent: ExtentJson }>(
      "PATCH",
      `/api/restrictions/${encodeURIComponent(refId)}`,
      { extent },
    );
  }

  postProject(draft: ProjectDraftJson) {
    return this.request<OverlapReportJson>("POST", "/api/projects", draft);
  }

  getTimeline(params: TimelineParams) {
    return this.request<TimelineResponse>(
      "GET",
      "/api/timeline" +
        this.query({
          from: params.from,
          to: params.to,
          lod: params.lod,
          class: params.klass,
          bbox: params.bbox,
          category: params.category,
        }),
    );
  }

  getTimelineSelect(params: Omit<TimelineParams, "lod">) {
    return this.request<TimelineSelectResponse>(
      "GET",
      "/api/timeline/select" +
        this.query({
          from: params.from,
          to: params.to,
          class: params.klass,
          bbox: params.bbox,
          category: params.category,
        }),
    );
  }

  getClasses() {
    return this.request<ClassesResponse>("GET", "/api/classes");
  }
}
