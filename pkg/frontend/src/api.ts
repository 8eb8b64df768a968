// Thin typed client for the routing HTTP API.

export type Mode = "default" | "privacy" | "safety";

export interface GeoPoint {
  lat: number;
  lon: number;
}

export interface RouteResponse {
  geometry: { type: "LineString"; coordinates: [number, number][] };
  distance_m: number;
  surveilled_distance_m: number;
  cameras_passed: number;
  status: "complete" | "partial" | "none";
  snapped_from: GeoPoint | null;
  snapped_to: GeoPoint | null;
}

export interface CameraCollection {
  type: "FeatureCollection";
  features: Array<{
    type: "Feature";
    geometry:
      | { type: "Point"; coordinates: [number, number] }
      | { type: "Polygon"; coordinates: [number, number][][] };
    properties: Record<string, unknown>;
  }>;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

// Marker coordinates must survive the query string intact; seven
// decimals is ~1 cm, comfortably above the six-decimal contract.
export function formatPoint(p: GeoPoint): string {
  return `${p.lat.toFixed(7)},${p.lon.toFixed(7)}`;
}

export function routeUrl(base: string, from: GeoPoint, to: GeoPoint, mode: Mode): string {
  const params = new URLSearchParams({
    from: formatPoint(from),
    to: formatPoint(to),
    mode,
  });
  return `${base}/route?${params.toString()}`;
}

async function errorMessage(res: Response): Promise<string> {
  try {
    const body = await res.json();
    if (body && typeof body.error === "string") return body.error;
  } catch {
    // fall through to the generic message
  }
  return `request failed with status ${res.status}`;
}

export async function fetchRoute(
  base: string,
  from: GeoPoint,
  to: GeoPoint,
  mode: Mode,
  signal?: AbortSignal,
): Promise<RouteResponse> {
  const res = await fetch(routeUrl(base, from, to, mode), { signal });
  if (!res.ok) throw new ApiError(res.status, await errorMessage(res));
  return (await res.json()) as RouteResponse;
}

export interface RetryOptions {
  retries?: number;
  baseDelayMs?: number;
  sleep?: (ms: number) => Promise<void>;
}

const defaultSleep = (ms: number) => new Promise<void>((r) => setTimeout(r, ms));

// The dataset may still be loading right after service start; 503 is
// retried with exponential backoff, other errors surface immediately.
export async function fetchCameras(
  base: string,
  opts: RetryOptions = {},
): Promise<CameraCollection> {
  const retries = opts.retries ?? 4;
  const baseDelay = opts.baseDelayMs ?? 500;
  const sleep = opts.sleep ?? defaultSleep;
  for (let attempt = 0; ; attempt++) {
    const res = await fetch(`${base}/cameras`);
    if (res.ok) return (await res.json()) as CameraCollection;
    if (res.status !== 503 || attempt >= retries) {
      throw new ApiError(res.status, await errorMessage(res));
    }
    await sleep(baseDelay * 2 ** attempt);
  }
}
