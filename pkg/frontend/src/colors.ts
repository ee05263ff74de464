// Category colors: configured overrides first, then a muted palette in
// stable alphabetical assignment.

const PALETTE = [
  "#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3",
  "#937860", "#da8bc3", "#8c8c8c", "#ccb974", "#64b5cd",
];

export const SELECTION_ORANGE = "#ff8c00";
export const BAR_GREEN = "#2e8b57";

export function categoryColors(
  categories: Iterable<string>,
  overrides: Record<string, string> = {},
): Map<string, string> {
  const ordered = [...new Set(categories)].sort();
  const out = new Map<string, string>();
  let next = 0;
  for (const category of ordered) {
    out.set(category, overrides[category] ?? PALETTE[next++ % PALETTE.length]);
  }
  return out;
}
