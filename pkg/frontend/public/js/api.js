// Typed client over the documented API routes. Every request the UI makes
// goes through this module, which is what the route-contract test leans on.
export class ApiError extends Error {
    constructor(status, code, message) {
        super(message);
        this.status = status;
        this.code = code;
    }
}
export class ApiClient {
    constructor(baseUrl = "") {
        this.baseUrl = baseUrl;
    }
    async request(method, path, body) {
        const init = { method };
        if (body !== undefined) {
            init.headers = { "content-type": "application/json" };
            init.body = JSON.stringify(body);
        }
        const response = await fetch(this.baseUrl + path, init);
        const payload = await response.json();
        if (!response.ok) {
            throw new ApiError(payload.status ?? response.status, payload.code ?? "io", payload.message ?? `request failed: ${method} ${path}`);
        }
        return payload;
    }
    query(params) {
        const search = new URLSearchParams();
        for (const [key, value] of Object.entries(params)) {
            if (value !== undefined && value !== null && value !== "") {
                search.append(key, value);
            }
        }
        const encoded = search.toString();
        return encoded ? `?${encoded}` : "";
    }
    getPolygons(opts = {}) {
        return this.request("GET", "/api/polygons" + this.query({ bbox: opts.bbox, category: opts.category }));
    }
    postPolygon(polygon) {
        return this.request("POST", "/api/polygons", polygon);
    }
    postDocument(body) {
        return this.request("POST", "/api/documents", body);
    }
    getOverlaps(polygonId) {
        return this.request("GET", `/api/polygons/${encodeURIComponent(polygonId)}/overlaps`);
    }
    getRestrictions(polygonId, at) {
        return this.request("GET", `/api/polygons/${encodeURIComponent(polygonId)}/restrictions` + this.query({ at }));
    }
    patchRestriction(refId, extent) {
        return this.request("PATCH", `/api/restrictions/${encodeURIComponent(refId)}`, { extent });
    }
    postProject(draft) {
        return this.request("POST", "/api/projects", draft);
    }
    getTimeline(params) {
        return this.request("GET", "/api/timeline" +
            this.query({
                from: params.from,
                to: params.to,
                lod: params.lod,
                class: params.klass,
                bbox: params.bbox,
                category: params.category,
            }));
    }
    getTimelineSelect(params) {
        return this.request("GET", "/api/timeline/select" +
            this.query({
                from: params.from,
                to: params.to,
                class: params.klass,
                bbox: params.bbox,
                category: params.category,
            }));
    }
    getClasses() {
        return this.request("GET", "/api/classes");
    }
}
