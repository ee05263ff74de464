// Runtime configuration, loaded from a single JSON file next to the
// bundle. Everything has a workable default so the UI also boots bare.

export interface UiConfig {
  apiBaseUrl: string;
  tileUrl: string | null; // null: blank-grid basemap fallback
  categoryColors: Record<string, string>;
  initialTimeRange: { start: string; end: string };
}

export const DEFAULT_CONFIG: UiConfig = {
  apiBaseUrl: "",
  tileUrl: null,
  categoryColors: {},
  initialTimeRange: { start: "2020-01-01", end: "2023-12-31" },
};

export async function loadConfig(url = "config.json"): Promise<UiConfig> {
  try {
    const response = await fetch(url);
    if (!response.ok) return { ...DEFAULT_CONFIG };
    const raw = await response.json();
    return {
      ...DEFAULT_CONFIG,
      ...raw,
      initialTimeRange: { ...DEFAULT_CONFIG.initialTimeRange, ...(raw.initialTimeRange ?? {}) },
    };
  } catch {
    return { ...DEFAULT_CONFIG };
  }
}
