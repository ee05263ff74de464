// Wire types of the HTTP API the UI consumes.

export interface PolygonJson {
  id: string;
  category: string;
  ring: [number, number][];
}

export interface BBox {
  minLon: number;
  minLat: number;
  maxLon: number;
  maxLat: number;
}

export interface ExtentJson {
  form: "absolute" | "recurring" | "undated";
  start?: string;
  end?: string;
  startMonth?: number;
  startDay?: number;
  endMonth?: number;
  endDay?: number;
}

export interface RefJson {
  docId: string;
  sentenceIndex: number;
  sentence: string;
  kind: "Prohibition" | "Requirement";
  topic: string;
  extent: ExtentJson;
  refId?: string;
  undated?: boolean;
  active?: boolean;
}

export interface DocumentJson {
  docId: string;
  title: string;
  refs: RefJson[];
}

export interface OverlapEntryJson {
  polygonId: string;
  category: string;
  overlapArea: number;
  documents: DocumentJson[];
}

export interface OverlapsResponse {
  polygonId: string;
  entries: OverlapEntryJson[];
}

export interface OverlapReportJson {
  newPolygonId: string;
  entries: OverlapEntryJson[];
  warnings: string[];
}

export interface TopicGroupJson {
  topic: string;
  refs: RefJson[];
}

export interface RestrictionsResponse {
  polygonId: string;
  at?: string;
  topics: TopicGroupJson[];
}

export interface TimelineBucketJson {
  start: string;
  count: number;
}

export interface TimelineResponse {
  lod: string;
  buckets: TimelineBucketJson[];
}

export interface SelectedDocumentJson {
  docId: string;
  title: string;
  polygonIds: string[];
  refs: RefJson[];
}

export interface TimelineSelectResponse {
  documents: SelectedDocumentJson[];
}

export interface ClassesResponse {
  classes: string[];
}

export interface ProjectDraftJson {
  points: [number, number][];
  kind: "area" | "path";
  category: string;
  name: string;
  width?: number;
}

export interface TimeRange {
  start: string; // ISO date
  end: string;
}
