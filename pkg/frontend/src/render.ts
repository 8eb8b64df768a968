// Pure projection of UiState onto drawable primitives.  The map layer
// consumes this; tests assert on it directly.

import type { CameraCollection, GeoPoint } from "./api";
import type { UiState } from "./state";

export interface Marker {
  position: GeoPoint;
  color: "green" | "red";
}

export interface RenderModel {
  markers: Marker[];
  polylines: GeoPoint[][];
  // straight dashed reach from a partial route's endpoint to the
  // requested destination
  dashedSegment: [GeoPoint, GeoPoint] | null;
  banner: string | null;
  stats: {
    distanceM: number;
    surveilledDistanceM: number;
    camerasPassed: number;
    status: string;
  } | null;
  overlay: {
    visible: boolean;
    badge: number;
    features: CameraCollection["features"];
  };
}

function lineToPoints(coords: [number, number][]): GeoPoint[] {
  return coords.map(([lon, lat]) => ({ lat, lon }));
}

export function renderModel(state: UiState): RenderModel {
  const markers: Marker[] = [];
  if (state.start) markers.push({ position: state.start, color: "green" });
  if (state.end) markers.push({ position: state.end, color: "red" });

  const result = state.lastResult;
  const polylines: GeoPoint[][] = [];
  let dashedSegment: RenderModel["dashedSegment"] = null;
  let stats: RenderModel["stats"] = null;
  if (result !== null && result.status !== "none") {
    const line = lineToPoints(result.geometry.coordinates);
    if (line.length > 0) polylines.push(line);
    if (result.status === "partial" && line.length > 0 && state.end) {
      dashedSegment = [line[line.length - 1], state.end];
    }
  }
  if (result !== null) {
    stats = {
      distanceM: result.distance_m,
      surveilledDistanceM: result.surveilled_distance_m,
      camerasPassed: result.cameras_passed,
      status: result.status,
    };
  }

  const features = state.cameras?.features ?? [];
  return {
    markers,
    polylines,
    dashedSegment,
    banner: state.banner,
    stats,
    overlay: {
      visible: state.overlaysVisible,
      badge: features.length / 2,
      features: state.overlaysVisible ? features : [],
    },
  };
}
