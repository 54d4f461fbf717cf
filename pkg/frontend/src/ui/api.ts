/** Thin fetch client for the studio-service HTTP API. The dashboard never
 * computes analytics itself; every displayed number comes from here. */

import type { CohortPatch, SankeyModel, VersionStats } from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, readonly code: string, message: string) {
    super(message);
  }
}

export class StudioApi {
  constructor(private readonly baseUrl: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      method,
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiError(
        response.status,
        payload.code ?? "unknown",
        payload.message ?? response.statusText,
      );
    }
    return payload as T;
  }

  createProject(title: string) {
    return this.request<{ id: string }>("POST", "/projects", { title });
  }

  analyzeRequirements(projectId: string, text: string, image?: string) {
    return this.request<{ features: Record<string, unknown> }>(
      "POST",
      `/projects/${projectId}/requirements`,
      { text, image },
    );
  }

  generateQuestion(projectId: string, features: Record<string, unknown>) {
    return this.request<{ id: string }>(
      "POST",
      `/projects/${projectId}/questions`,
      { features },
    );
  }

  reviseQuestion(
    projectId: string,
    versionId: string,
    revisionPrompt: string,
    featureDeltas: Record<string, unknown> = {},
  ) {
    return this.request<{ id: string }>(
      "POST",
      `/projects/${projectId}/questions/${versionId}/revise`,
      { revision_prompt: revisionPrompt, feature_deltas: featureDeltas },
    );
  }

  runSimulation(projectId: string, versionId: string, seed = 0) {
    return this.request<{ id: string }>("POST", `/projects/${projectId}/runs`, {
      version_id: versionId,
      seed,
    });
  }

  getSankey(projectId: string, runId: string) {
    return this.request<SankeyModel>(
      "GET",
      `/projects/${projectId}/runs/${runId}/sankey`,
    );
  }

  compareVersions(projectId: string, runId: string) {
    return this.request<{ versions: VersionStats[] }>(
      "GET",
      `/projects/${projectId}/runs/${runId}/versions/compare`,
    );
  }

  patchCohort(projectId: string, patch: CohortPatch) {
    return this.request<{ profiles: unknown[] }>(
      "PATCH",
      `/projects/${projectId}/cohort`,
      patch,
    );
  }
}
