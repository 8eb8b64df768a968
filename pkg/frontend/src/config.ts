// Static deployment configuration, fetched once at startup.

export interface AppConfig {
  apiBase: string;
  tileUrl: string;
  tileAttribution: string;
  center: { lat: number; lon: number };
  zoom: number;
}

export const DEFAULT_CONFIG: AppConfig = {
  apiBase: "http://127.0.0.1:8000",
  tileUrl: "https://tile.openstreetmap.org/{z}/{x}/{y}.png",
  tileAttribution: "&copy; OpenStreetMap contributors",
  center: { lat: 62.24, lon: 25.74 },
  zoom: 15,
};

export async function loadConfig(url = "./config.json"): Promise<AppConfig> {
  try {
    const res = await fetch(url);
    if (!res.ok) return DEFAULT_CONFIG;
    const raw = (await res.json()) as Partial<AppConfig>;
    return { ...DEFAULT_CONFIG, ...raw };
  } catch {
    return DEFAULT_CONFIG;
  }
}
