/** Shapes of the studio-service responses the dashboard consumes. */

export interface SankeyBlock {
  label: string;
  prefix: string[];
  depth: number;
  member_ids: string[];
  count: number;
  mean_token_count: number;
  terminal_cluster_counts: Record<string, number>;
  children: SankeyBlock[];
}

export interface AnswerNode {
  label: string;
  count: number;
  share: number;
  blocks: SankeyBlock[];
}

export interface SankeyModel {
  total: number;
  question_version_id: string;
  answer_nodes: AnswerNode[];
}

export type RatingMeans = Record<string, number>;

export interface VersionStats {
  version_id: string;
  run_id: string;
  accuracy: number;
  rating_means: Record<string, RatingMeans>;
  previous_rating_means?: Record<string, RatingMeans>;
  previous_accuracy?: number;
}

export interface GroupSummary {
  cluster_index: number;
  size: number;
  dominant_major: string;
  major_share: number;
  trait_means: Record<string, number>;
  knowledge_means: Record<string, number>;
}

export interface CohortPatch {
  selector: { ids: string[] };
  edits: Record<string, { shift: number }>;
}

export interface ViewState {
  projectId: string | null;
  versionId: string | null;
  runId: string | null;
  /** Selected answer label, or null for the unfiltered Sankey. */
  sankeyFilter: string | null;
}

export function initialViewState(): ViewState {
  return { projectId: null, versionId: null, runId: null, sankeyFilter: null };
}
