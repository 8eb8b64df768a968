// Browser entry point: Leaflet map wired to the UI controller.

import L from "leaflet";
import "leaflet/dist/leaflet.css";

import { fetchCameras, type GeoPoint, type Mode } from "./api";
import { loadConfig } from "./config";
import { renderModel } from "./render";
import { UiController, type UiState } from "./state";

const MARKER_COLORS = { green: "#2e8b57", red: "#c0392b" } as const;

function circleMarker(p: GeoPoint, color: "green" | "red"): L.CircleMarker {
  return L.circleMarker([p.lat, p.lon], {
    radius: 7,
    color: MARKER_COLORS[color],
    fillColor: MARKER_COLORS[color],
    fillOpacity: 0.9,
  });
}

async function boot(): Promise<void> {
  const config = await loadConfig();
  const map = L.map("map").setView([config.center.lat, config.center.lon], config.zoom);
  L.tileLayer(config.tileUrl, { attribution: config.tileAttribution }).addTo(map);

  const routeLayer = L.layerGroup().addTo(map);
  const overlayLayer = L.layerGroup().addTo(map);
  const statsEl = document.getElementById("stats")!;
  const bannerEl = document.getElementById("banner")!;
  const badgeEl = document.getElementById("badge")!;

  const draw = (state: UiState): void => {
    const model = renderModel(state);
    routeLayer.clearLayers();
    for (const m of model.markers) circleMarker(m.position, m.color).addTo(routeLayer);
    for (const line of model.polylines) {
      L.polyline(line.map((p) => [p.lat, p.lon] as [number, number]), {
        color: "#1f6feb",
        weight: 4,
      }).addTo(routeLayer);
    }
    if (model.dashedSegment) {
      const [a, b] = model.dashedSegment;
      L.polyline(
        [
          [a.lat, a.lon],
          [b.lat, b.lon],
        ],
        { color: "#1f6feb", weight: 2, dashArray: "6 8" },
      ).addTo(routeLayer);
    }

    overlayLayer.clearLayers();
    for (const f of model.overlay.features) {
      if (f.geometry.type === "Point") {
        const [lon, lat] = f.geometry.coordinates;
        L.circleMarker([lat, lon], { radius: 4, color: "#8e44ad" }).addTo(overlayLayer);
      } else {
        const ring = f.geometry.coordinates[0].map(
          ([lon, lat]) => [lat, lon] as [number, number],
        );
        L.polygon(ring, { color: "#8e44ad", weight: 1, fillOpacity: 0.15 }).addTo(overlayLayer);
      }
    }

    badgeEl.textContent = String(model.overlay.badge);
    bannerEl.textContent = model.banner ?? "";
    bannerEl.style.display = model.banner ? "block" : "none";
    statsEl.textContent = model.stats
      ? `${model.stats.status}: ${model.stats.distanceM.toFixed(0)} m, ` +
        `${model.stats.surveilledDistanceM.toFixed(0)} m surveilled, ` +
        `${model.stats.camerasPassed} cameras`
      : "";
  };

  const controller = new UiController({ apiBase: config.apiBase, onChange: draw });

  map.on("click", (e: L.LeafletMouseEvent) => {
    void controller.placeMarker({ lat: e.latlng.lat, lon: e.latlng.lng });
  });

  const modeSelect = document.getElementById("mode") as HTMLSelectElement;
  modeSelect.addEventListener("change", () => {
    void controller.setMode(modeSelect.value as Mode);
  });

  const overlayButton = document.getElementById("overlays")!;
  overlayButton.addEventListener("click", () => controller.toggleOverlays());

  try {
    controller.setCameras(await fetchCameras(config.apiBase));
  } catch (err) {
    bannerEl.textContent = err instanceof Error ? err.message : String(err);
    bannerEl.style.display = "block";
  }
}

void boot();
