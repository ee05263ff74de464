// Information panel: documents, sentences, classifications, and validity
// periods for the current subject (selected polygon, saved draft report,
// or brushed time range). Undated restrictions carry a warning badge and
// an inline form that patches a period onto them.
export class InfoPanel {
    constructor(container, state, api) {
        this.state = state;
        this.api = api;
        this.root = container.ownerDocument.createElement("div");
        this.root.className = "info-panel";
        container.appendChild(this.root);
        this.showPlaceholder();
    }
    showPlaceholder() {
        this.root.innerHTML = "";
        const p = this.el("p", "placeholder", "Select a polygon, draw a project, or brush the timeline.");
        this.root.appendChild(p);
    }
    showError(message) {
        const banner = this.el("div", "error-banner", message);
        this.root.prepend(banner);
    }
    /** Selected polygon: its overlaps and every applicable restriction. */
    async showPolygon(polygonId) {
        try {
            const [overlaps, restrictions] = await Promise.all([
                this.api.getOverlaps(polygonId),
                this.api.getRestrictions(polygonId),
            ]);
            this.root.innerHTML = "";
            this.root.appendChild(this.el("h2", "subject", polygonId));
            this.renderAtCheck(polygonId);
            const topics = this.el("div", "topics", "");
            for (const group of restrictions.topics) {
                topics.appendChild(this.el("h3", "topic", group.topic));
                for (const ref of group.refs)
                    topics.appendChild(this.refItem(ref));
            }
            this.root.appendChild(topics);
            this.root.appendChild(this.el("h3", "overlaps-heading", "Overlapping polygons"));
            for (const entry of overlaps.entries)
                this.root.appendChild(this.entryItem(entry));
        }
        catch (err) {
            this.showError(String(err));
        }
    }
    /** Overlap report straight from saving a drawn project. */
    showReport(report) {
        this.root.innerHTML = "";
        this.root.appendChild(this.el("h2", "subject", `New project: ${report.newPolygonId}`));
        for (const warning of report.warnings) {
            this.root.appendChild(this.el("div", "warning", warning));
        }
        if (report.entries.length === 0) {
            this.root.appendChild(this.el("p", "empty", "No overlapping polygons."));
            return;
        }
        for (const entry of report.entries)
            this.root.appendChild(this.entryItem(entry));
    }
    showBrushedDocuments(range, documents) {
        this.root.innerHTML = "";
        this.root.appendChild(this.el("h2", "subject", `Documents ${range.start} – ${range.end}`));
        for (const doc of documents) {
            const block = this.el("div", "document", "");
            block.dataset.docId = doc.docId;
            block.appendChild(this.el("h3", "doc-title", doc.title));
            block.appendChild(this.el("p", "doc-polygons", doc.polygonIds.join(", ")));
            for (const ref of doc.refs)
                block.appendChild(this.refItem(ref));
            this.root.appendChild(block);
        }
    }
    entryItem(entry) {
        const block = this.el("div", "overlap-entry", "");
        block.dataset.polygonId = entry.polygonId;
        block.appendChild(this.el("h4", "entry-heading", `${entry.polygonId} (${entry.category}, ${entry.overlapArea.toFixed(2)} m²)`));
        for (const doc of entry.documents) {
            block.appendChild(this.el("p", "doc-title", doc.title));
            for (const ref of doc.refs)
                block.appendChild(this.refItem(ref));
        }
        return block;
    }
    refItem(ref) {
        const item = this.el("div", "ref", "");
        if (ref.refId)
            item.dataset.refId = ref.refId;
        item.dataset.topic = ref.topic;
        item.appendChild(this.el("span", `kind kind-${ref.kind.toLowerCase()}`, ref.kind));
        item.appendChild(this.el("span", "topic-label", ref.topic));
        item.appendChild(this.el("span", "extent", extentLabel(ref.extent)));
        item.appendChild(this.el("p", "sentence", ref.sentence));
        if (ref.extent.form === "undated") {
            item.appendChild(this.el("span", "badge-undated", "undated"));
            if (ref.refId)
                item.appendChild(this.extentEditor(ref.refId));
        }
        if (ref.active === true)
            item.classList.add("active");
        if (ref.active === false)
            item.classList.add("inactive");
        return item;
    }
    /** Inline month/day form that PATCHes a recurring period onto an
     * undated restriction. */
    extentEditor(refId) {
        const doc = this.root.ownerDocument;
        const form = doc.createElement("form");
        form.className = "extent-editor";
        form.dataset.refId = refId;
        const fields = [
            ["startMonth", "3"], ["startDay", "1"], ["endMonth", "9"], ["endDay", "30"],
        ];
        for (const [name, fallback] of fields) {
            const input = doc.createElement("input");
            input.type = "number";
            input.name = name;
            input.value = fallback;
            form.appendChild(input);
        }
        const submit = doc.createElement("button");
        submit.type = "submit";
        submit.textContent = "set period";
        form.appendChild(submit);
        form.addEventListener("submit", (event) => {
            event.preventDefault();
            const val = (name) => Number(form.elements.namedItem(name).value);
            const extent = {
                form: "recurring",
                startMonth: val("startMonth"),
                startDay: val("startDay"),
                endMonth: val("endMonth"),
                endDay: val("endDay"),
            };
            void this.api
                .patchRestriction(refId, extent)
                .then(() => {
                form.replaceWith(this.el("span", "patched", extentLabel(extent)));
            })
                .catch((err) => this.showError(String(err)));
        });
        return form;
    }
    /** The at-date compliance check ("which restrictions bind on day X?"). */
    renderAtCheck(polygonId) {
        const doc = this.root.ownerDocument;
        const form = doc.createElement("form");
        form.className = "at-check";
        const input = doc.createElement("input");
        input.type = "date";
        input.name = "at";
        form.appendChild(input);
        const button = doc.createElement("button");
        button.type = "submit";
        button.textContent = "check date";
        form.appendChild(button);
        const results = this.el("div", "at-results", "");
        form.addEventListener("submit", (event) => {
            event.preventDefault();
            if (!input.value)
                return;
            void this.api
                .getRestrictions(polygonId, input.value)
                .then((response) => {
                results.innerHTML = "";
                results.dataset.at = input.value;
                for (const group of response.topics) {
                    results.appendChild(this.el("h3", "topic", group.topic));
                    for (const ref of group.refs)
                        results.appendChild(this.refItem(ref));
                }
                if (response.topics.length === 0) {
                    results.appendChild(this.el("p", "empty", "No restrictions on this date."));
                }
            })
                .catch((err) => this.showError(String(err)));
        });
        this.root.appendChild(form);
        this.root.appendChild(results);
    }
    el(tag, className, text) {
        const node = this.root?.ownerDocument.createElement(tag) ?? document.createElement(tag);
        node.className = className;
        if (text)
            node.textContent = text;
        return node;
    }
}
export function extentLabel(extent) {
    if (extent.form === "absolute")
        return `${extent.start} – ${extent.end}`;
    if (extent.form === "recurring") {
        const pad = (n) => String(n ?? 0).padStart(2, "0");
        return `yearly ${pad(extent.startMonth)}-${pad(extent.startDay)} – ${pad(extent.endMonth)}-${pad(extent.endDay)}`;
    }
    return "undated";
}
