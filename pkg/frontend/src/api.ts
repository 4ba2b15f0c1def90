import type {
  ClassFilter,
  DatasetSummary,
  FeatureMetaRow,
  PointRow,
  SelectionRequestBody,
  SelectionResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public code: string,
    message: string,
    public status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

/**
 * Thin typed client for the odflow service.  Every view-facing number in the
 * UI comes through here; nothing is recomputed client-side.
 */
export class ApiClient {
  private fetchFn: FetchLike;

  constructor(
    public baseUrl: string,
    fetchFn?: FetchLike,
  ) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
    this.fetchFn = fetchFn ?? ((input, init) => globalThis.fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let res: Response;
    try {
      res = await this.fetchFn(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError("network_error", String(err), 0);
    }
    if (!res.ok) {
      let code = "http_error";
      let message = `${res.status} ${res.statusText}`;
      try {
        const body = (await res.json()) as { code?: string; message?: string };
        if (body.code) code = body.code;
        if (body.message) message = body.message;
      } catch {
        // non-JSON error body, keep the status line
      }
      throw new ApiError(code, message, res.status);
    }
    return (await res.json()) as T;
  }

  listDatasets(): Promise<DatasetSummary[]> {
    return this.request("/datasets");
  }

  points(dataset: string, cls: ClassFilter): Promise<PointRow[]> {
    const q = cls === "all" ? "" : `?class=${cls}`;
    return this.request(`/datasets/${encodeURIComponent(dataset)}/points${q}`);
  }

  features(dataset: string): Promise<FeatureMetaRow[]> {
    return this.request(`/datasets/${encodeURIComponent(dataset)}/features`);
  }

  selection(
    dataset: string,
    body: SelectionRequestBody,
  ): Promise<SelectionResponse> {
    return this.request(
      `/datasets/${encodeURIComponent(dataset)}/selection`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
      },
    );
  }
}
