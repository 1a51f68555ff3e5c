/**
 * Thin client for the study service's JSON API, with accept-retry support:
 * a failed accept keeps the stroke locally and can simply be retried.
 */

import type { CanvasSpec, StrokeRecord } from "./capture.js";

export interface SessionInfo {
  id: string;
  participant: number;
}

export interface StimulusPayload {
  complete: boolean;
  index: number | null;
  total: number;
  dataset?: string;
  level?: string;
  canvas?: CanvasSpec;
  series?: { xs: number[]; ys: number[] };
  svg?: string;
}

export interface SubmitResult {
  action: string;
  stimulus: number;
  accepted: boolean;
  complete: boolean;
  next_index: number | null;
}

type FetchLike = typeof fetch;

export class StudyClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      throw new Error(payload?.error ?? `${method} ${path} failed with ${response.status}`);
    }
    return payload as T;
  }

  createSession(participant?: number): Promise<SessionInfo> {
    return this.request("POST", "/api/sessions", participant === undefined ? {} : { participant });
  }

  fetchStimulus(sessionId: string): Promise<StimulusPayload> {
    return this.request("GET", `/api/sessions/${sessionId}/stimulus`);
  }

  submitSketch(sessionId: string, stimulus: number, stroke: StrokeRecord | null, action: "accept" | "reset"): Promise<SubmitResult> {
    return this.request("POST", `/api/sessions/${sessionId}/sketch`, {
      stimulus,
      action,
      stroke: stroke ?? undefined,
    });
  }
}
