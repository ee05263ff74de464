import { describe, expect, it } from "vitest";

import { DEFAULT_VIEWPORT, ViewState, bboxEquals, isAligned, pickLod } from "../src/state.js";

describe("pane linking", () => {
  it("keeps all viewports identical while linked", () => {
    const state = new ViewState(3);
    const [a, b, c] = state.paneIds();
    state.setViewport(b, { minLon: 12.4, minLat: 51.2, maxLon: 12.5, maxLat: 51.3 });
    expect(state.linkageHolds()).toBe(true);
    expect(bboxEquals(state.viewport(a), state.viewport(c))).toBe(true);
    expect(state.viewport(a).minLon).toBe(12.4);
  });

  it("lets panes diverge when unlinked and snaps them back on re-link", () => {
    const state = new ViewState(2);
    const [a, b] = state.paneIds();
    state.setLinked(false);
    state.setViewport(b, { minLon: 1, minLat: 2, maxLon: 3, maxLat: 4 });
    expect(bboxEquals(state.viewport(a), state.viewport(b))).toBe(false);
    state.setLinked(true);
    expect(state.linkageHolds()).toBe(true);
    expect(bboxEquals(state.viewport(b), state.viewport(a))).toBe(true);
    expect(state.viewport(b).minLon).toBe(DEFAULT_VIEWPORT.minLon);
  });

  it("new panes copy the current viewport; pane count caps at four", () => {
    const state = new ViewState(2);
    state.setViewport(state.paneIds()[0], {
      minLon: 5, minLat: 6, maxLon: 7, maxLat: 8,
    });
    const added = state.addPane();
    expect(added).not.toBeNull();
    expect(state.viewport(added!).minLon).toBe(5);
    state.addPane();
    expect(state.addPane()).toBeNull();
    expect(state.paneIds().length).toBe(4);
  });
});

describe("selection and layers", () => {
  it("selection joins the highlighted set", () => {
    const state = new ViewState(2);
    state.selectPolygon("p-wildpark");
    state.setBrush({ start: "2022-03-01", end: "2022-09-30" }, ["p-a", "p-b"]);
    expect([...state.highlightedIds()].sort()).toEqual(["p-a", "p-b", "p-wildpark"]);
    state.setBrush(null);
    expect([...state.highlightedIds()]).toEqual(["p-wildpark"]);
  });

  it("hiding the selected polygon's category clears the selection", () => {
    const state = new ViewState(1);
    state.selectPolygon("p-wildpark");
    state.setCategoryVisible("wildlife park", false, () => "wildlife park");
    expect(state.selectedPolygonId).toBeNull();
    expect(state.isCategoryVisible("wildlife park")).toBe(false);
  });
});

describe("level-of-detail thresholds", () => {
  it("maps range width onto the five levels", () => {
    expect(pickLod({ start: "2014-01-01", end: "2035-12-31" })).toBe("decade");
    expect(pickLod({ start: "2020-01-01", end: "2023-12-31" })).toBe("year");
    expect(pickLod({ start: "2022-01-01", end: "2023-03-31" })).toBe("quarter");
    expect(pickLod({ start: "2022-01-01", end: "2022-06-30" })).toBe("month");
    expect(pickLod({ start: "2022-03-01", end: "2022-03-31" })).toBe("day");
  });

  it("checks bucket alignment per level", () => {
    expect(isAligned("decade", "2020-01-01")).toBe(true);
    expect(isAligned("decade", "2021-01-01")).toBe(false);
    expect(isAligned("quarter", "2022-04-01")).toBe(true);
    expect(isAligned("quarter", "2022-05-01")).toBe(false);
    expect(isAligned("month", "2022-05-01")).toBe(true);
    expect(isAligned("month", "2022-05-02")).toBe(false);
    expect(isAligned("day", "2022-05-02")).toBe(true);
  });
});
