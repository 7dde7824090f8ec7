/** Thin API client with latest-request-wins response handling. */

import type { ArticleDoc, LayoutDoc } from "./types.js";

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class StaleResponse extends Error {
  constructor() {
    super("superseded by a newer request");
  }
}

/** Serializes a stream of async requests: only the newest may resolve. */
export class LatestWins {
  private seq = 0;

  async run<T>(work: () => Promise<T>): Promise<T> {
    const ticket = ++this.seq;
    const result = await work();
    if (ticket !== this.seq) throw new StaleResponse();
    return result;
  }
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class Api {
  private layoutGate = new LatestWins();

  constructor(private base: string, private fetchFn: FetchLike = fetch.bind(globalThis)) {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.base}${path}`, init);
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      const detail = (body as { detail?: string; error?: string }).detail ?? (body as { error?: string }).error;
      throw new ApiError(response.status, detail ?? `request failed with ${response.status}`);
    }
    return body as T;
  }

  importArticles(articlesJson: string): Promise<{ corpus_id: string; k: number; warnings: string[] }> {
    return this.json("/corpora", { method: "POST", body: articlesJson });
  }

  analyze(corpusId: string, config: Record<string, unknown>): Promise<{ analysis_id: string }> {
    return this.json(`/corpora/${corpusId}/analyses`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(config),
    });
  }

  /** Layout requests race (threshold slider, axis swap): latest wins. */
  layout(analysisId: string, params: Record<string, string | number> = {}): Promise<LayoutDoc> {
    const query = new URLSearchParams(
      Object.entries(params).map(([key, value]) => [key, String(value)]),
    ).toString();
    const suffix = query ? `?${query}` : "";
    return this.layoutGate.run(() => this.json<LayoutDoc>(`/analyses/${analysisId}/layout${suffix}`));
  }

  article(corpusId: string, articleId: string): Promise<ArticleDoc> {
    return this.json(`/corpora/${corpusId}/articles/${encodeURIComponent(articleId)}`);
  }
}
