// UI state machine, independent of any map library so it can be tested
// headlessly.  The controller owns marker placement, mode selection,
// the single in-flight route request, and the camera overlay.

import type { CameraCollection, GeoPoint, Mode, RouteResponse } from "./api";
import { fetchRoute, formatPoint } from "./api";

export interface UiState {
  start: GeoPoint | null;
  end: GeoPoint | null;
  mode: Mode;
  lastResult: RouteResponse | null;
  overlaysVisible: boolean;
  cameras: CameraCollection | null;
  banner: string | null;
  pending: boolean;
}

export type RouteFetcher = (
  base: string,
  from: GeoPoint,
  to: GeoPoint,
  mode: Mode,
  signal?: AbortSignal,
) => Promise<RouteResponse>;

export interface ControllerOptions {
  apiBase: string;
  onChange?: (state: UiState) => void;
  routeFetcher?: RouteFetcher;
}

export class UiController {
  readonly state: UiState = {
    start: null,
    end: null,
    mode: "default",
    lastResult: null,
    overlaysVisible: false,
    cameras: null,
    banner: null,
    pending: false,
  };

  private readonly apiBase: string;
  private readonly onChange: (state: UiState) => void;
  private readonly routeFetcher: RouteFetcher;
  private inflight: AbortController | null = null;
  private lastRequestKey: string | null = null;

  constructor(opts: ControllerOptions) {
    this.apiBase = opts.apiBase;
    this.onChange = opts.onChange ?? (() => {});
    this.routeFetcher = opts.routeFetcher ?? fetchRoute;
  }

  // First click places the start, second the end (which fires the
  // request), third starts over with a fresh start marker.
  placeMarker(p: GeoPoint): Promise<void> {
    if (this.state.start === null || this.state.end !== null) {
      this.abortInflight();
      this.state.start = p;
      this.state.end = null;
      this.state.lastResult = null;
      this.state.banner = null;
      this.lastRequestKey = null;
      this.notify();
      return Promise.resolve();
    }
    this.state.end = p;
    this.notify();
    return this.maybeRequest();
  }

  setMode(mode: Mode): Promise<void> {
    if (mode === this.state.mode) return Promise.resolve();
    this.state.mode = mode;
    this.notify();
    return this.maybeRequest();
  }

  toggleOverlays(): void {
    this.state.overlaysVisible = !this.state.overlaysVisible;
    this.notify();
  }

  setCameras(collection: CameraCollection): void {
    this.state.cameras = collection;
    this.notify();
  }

  get overlayBadge(): number {
    const n = this.state.cameras?.features.length ?? 0;
    return n / 2; // one point + one FoV polygon per camera
  }

  private requestKey(): string {
    const { start, end, mode } = this.state;
    if (start === null || end === null) return "";
    return `${formatPoint(start)}|${formatPoint(end)}|${mode}`;
  }

  // Exactly one request per distinct (start, end, mode); a newer
  // request cancels an older one that is still in flight.
  private async maybeRequest(): Promise<void> {
    const { start, end, mode } = this.state;
    if (start === null || end === null) return;
    const key = this.requestKey();
    if (key === this.lastRequestKey) return;
    this.lastRequestKey = key;
    this.abortInflight();
    const controller = new AbortController();
    this.inflight = controller;
    this.state.pending = true;
    this.state.banner = null;
    this.notify();
    try {
      const result = await this.routeFetcher(this.apiBase, start, end, mode, controller.signal);
      if (controller.signal.aborted) return;
      this.state.lastResult = result;
      this.state.banner = result.status === "none" ? "no privacy route to that destination" : null;
    } catch (err) {
      if (controller.signal.aborted) return;
      this.state.lastResult = null;
      this.state.banner = err instanceof Error ? err.message : String(err);
      this.lastRequestKey = null; // allow a retry of the same query
    } finally {
      if (this.inflight === controller) {
        this.inflight = null;
        this.state.pending = false;
      }
      this.notify();
    }
  }

  private abortInflight(): void {
    if (this.inflight !== null) {
      this.inflight.abort();
      this.inflight = null;
      this.state.pending = false;
    }
  }

  private notify(): void {
    this.onChange(this.state);
  }
}
