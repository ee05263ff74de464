// Application shell: a grid of linked map panes, the timeline along the
// whole bottom row, the info panel on the right, category layer toggles,
// and the draw-to-report loop.
import { ApiClient } from "./api.js";
import { loadConfig } from "./config.js";
import { InfoPanel } from "./infoPanel.js";
import { MapPane, draftToRequestBody, viewportToBboxString } from "./mapPane.js";
import { ViewState } from "./state.js";
import { TimelinePane } from "./timeline.js";
export class App {
    constructor(api, config) {
        this.api = api;
        this.config = config;
        this.state = new ViewState(2);
        this.panes = [];
        this.polygons = [];
        this.categoryOf = new Map();
        this.pendingDraft = null;
        this.lastSelected = null;
    }
    async mount(root) {
        this.root = root;
        root.innerHTML = "";
        root.className = "app-root";
        const toolbar = this.buildToolbar(root.ownerDocument);
        root.appendChild(toolbar);
        const middle = root.ownerDocument.createElement("div");
        middle.className = "middle-row";
        this.panesRow = root.ownerDocument.createElement("div");
        this.panesRow.className = "panes-grid";
        middle.appendChild(this.panesRow);
        const panelHost = root.ownerDocument.createElement("div");
        panelHost.className = "panel-host";
        middle.appendChild(panelHost);
        root.appendChild(middle);
        // timeline gets the entire bottom row
        const timelineHost = root.ownerDocument.createElement("div");
        timelineHost.className = "timeline-row";
        root.appendChild(timelineHost);
        this.infoPanel = new InfoPanel(panelHost, this.state, this.api);
        for (const paneId of this.state.paneIds())
            this.addPaneElement(paneId);
        this.timeline = new TimelinePane(timelineHost, this.state, this.api, this.config.initialTimeRange, {
            onBrushDocuments: (range, docs) => this.infoPanel.showBrushedDocuments(range, docs),
            onError: (message) => this.infoPanel.showError(message),
            viewportBbox: () => {
                const first = this.state.paneIds()[0];
                return first === undefined ? null : viewportToBboxString(this.state.viewport(first));
            },
        });
        this.state.subscribe(() => this.onStateChange());
        await this.reloadPolygons();
        await this.timeline.refresh();
        await this.buildLayerToggles(toolbar);
    }
    onStateChange() {
        if (this.state.selectedPolygonId !== this.lastSelected) {
            this.lastSelected = this.state.selectedPolygonId;
            if (this.lastSelected) {
                void this.infoPanel.showPolygon(this.lastSelected);
            }
        }
    }
    async reloadPolygons() {
        try {
            const response = await this.api.getPolygons();
            this.polygons = response.polygons;
            this.categoryOf = new Map(response.polygons.map((p) => [p.id, p.category]));
            for (const pane of this.panes)
                pane.setPolygons(this.polygons);
        }
        catch (err) {
            this.infoPanel.showError(String(err));
        }
    }
    addPaneElement(paneId) {
        const host = this.panesRow.ownerDocument.createElement("div");
        host.className = "pane-host";
        host.dataset.paneId = String(paneId);
        this.panesRow.appendChild(host);
        const pane = new MapPane(host, paneId, this.state, {
            colorOverrides: this.config.categoryColors,
            onDraftComplete: (draft) => this.openCategoryDialog(draft),
        });
        pane.setPolygons(this.polygons);
        this.panes.push(pane);
        return pane;
    }
    addPane() {
        const paneId = this.state.addPane();
        if (paneId === null)
            return null;
        return this.addPaneElement(paneId);
    }
    // -- draw-to-report loop ----------------------------------------------------
    startDraw(kind) {
        this.panes[0]?.startDraw(kind);
    }
    /** Once a ring closes or a path finishes, ask for name and category
     * (the save dialog), then POST and show the report. */
    openCategoryDialog(draft) {
        this.pendingDraft = draft;
        const doc = this.root.ownerDocument;
        const dialog = doc.createElement("form");
        dialog.className = "category-dialog";
        const nameInput = doc.createElement("input");
        nameInput.name = "name";
        nameInput.placeholder = "project name";
        dialog.appendChild(nameInput);
        const categoryInput = doc.createElement("input");
        categoryInput.name = "category";
        categoryInput.placeholder = "category";
        dialog.appendChild(categoryInput);
        const save = doc.createElement("button");
        save.type = "submit";
        save.textContent = "save";
        dialog.appendChild(save);
        dialog.addEventListener("submit", (event) => {
            event.preventDefault();
            void this.saveDraft(nameInput.value, categoryInput.value);
            dialog.remove();
        });
        this.root.appendChild(dialog);
    }
    async saveDraft(name, category, width) {
        if (!this.pendingDraft)
            return;
        const body = draftToRequestBody(this.pendingDraft, name, category, width);
        this.pendingDraft = null;
        try {
            const report = await this.api.postProject(body);
            this.infoPanel.showReport(report);
            await this.reloadPolygons();
            this.state.selectPolygon(report.newPolygonId);
            this.infoPanel.showReport(report); // selection overwrote the panel; report wins
        }
        catch (err) {
            this.infoPanel.showError(String(err));
        }
    }
    // -- chrome ---------------------------------------------------------------------
    buildToolbar(doc) {
        const bar = doc.createElement("div");
        bar.className = "toolbar";
        const link = doc.createElement("input");
        link.type = "checkbox";
        link.checked = this.state.linkedPanes;
        link.className = "link-toggle";
        link.addEventListener("change", () => this.state.setLinked(link.checked));
        const linkLabel = doc.createElement("label");
        linkLabel.textContent = "link panes";
        linkLabel.prepend(link);
        bar.appendChild(linkLabel);
        const addPane = doc.createElement("button");
        addPane.textContent = "add pane";
        addPane.className = "add-pane";
        addPane.addEventListener("click", () => void this.addPane());
        bar.appendChild(addPane);
        const drawArea = doc.createElement("button");
        drawArea.textContent = "draw area";
        drawArea.className = "draw-area";
        drawArea.addEventListener("click", () => this.startDraw("area"));
        bar.appendChild(drawArea);
        const drawPath = doc.createElement("button");
        drawPath.textContent = "draw path";
        drawPath.className = "draw-path";
        drawPath.addEventListener("click", () => this.startDraw("path"));
        bar.appendChild(drawPath);
        return bar;
    }
    async buildLayerToggles(toolbar) {
        const doc = toolbar.ownerDocument;
        // restriction-class filter, data-driven from the registry
        try {
            const { classes } = await this.api.getClasses();
            const select = doc.createElement("select");
            select.className = "class-filter";
            const any = doc.createElement("option");
            any.value = "";
            any.textContent = "all classes";
            select.appendChild(any);
            for (const klass of classes) {
                const option = doc.createElement("option");
                option.value = klass;
                option.textContent = klass;
                select.appendChild(option);
            }
            select.addEventListener("change", () => {
                this.state.setClassFilter(select.value || null);
                void this.timeline.refresh();
            });
            toolbar.appendChild(select);
        }
        catch (err) {
            this.infoPanel.showError(String(err));
        }
        const holder = doc.createElement("span");
        holder.className = "layer-toggles";
        const categories = [...new Set(this.polygons.map((p) => p.category))].sort();
        for (const category of categories) {
            const box = doc.createElement("input");
            box.type = "checkbox";
            box.checked = true;
            box.dataset.category = category;
            box.addEventListener("change", () => this.state.setCategoryVisible(category, box.checked, (pid) => this.categoryOf.get(pid)));
            const label = doc.createElement("label");
            label.textContent = category;
            label.prepend(box);
            holder.appendChild(label);
        }
        toolbar.appendChild(holder);
    }
}
export async function boot(rootId = "app") {
    const config = await loadConfig();
    const api = new ApiClient(config.apiBaseUrl);
    const app = new App(api, config);
    const root = document.getElementById(rootId);
    if (!root)
        throw new Error(`missing #${rootId} element`);
    await app.mount(root);
    return app;
}
// browser entry point; tests construct App themselves
if (typeof document !== "undefined" && document.getElementById("app")) {
    void boot();
}
