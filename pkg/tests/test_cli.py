import json

from click.testing import CliRunner

from cctvroute import osm, preprocess as pp
from cctvroute.cli import cli

from helpers import geopoint_at, model_from_local, round_camera


def run(*args):
    return CliRunner().invoke(cli, list(args))


def synth_args(tmp_path, rows=3, cols=3, spacing=60, cameras=4, seed=1,
               suffix=""):
    return ["synth", "--rows", str(rows), "--cols", str(cols),
            "--spacing", str(spacing), "--cameras", str(cameras),
            "--seed", str(seed),
            "--out-osm", str(tmp_path / f"map{suffix}.osm"),
            "--out-cameras", str(tmp_path / f"cams{suffix}.csv")]


class TestSynth:
    def test_deterministic(self, tmp_path):
        r1 = run(*synth_args(tmp_path, seed=7, suffix="a"))
        r2 = run(*synth_args(tmp_path, seed=7, suffix="b"))
        assert r1.exit_code == 0 and r2.exit_code == 0
        assert (tmp_path / "mapa.osm").read_bytes() == (tmp_path / "mapb.osm").read_bytes()
        assert (tmp_path / "camsa.csv").read_bytes() == (tmp_path / "camsb.csv").read_bytes()

    def test_different_seeds_differ(self, tmp_path):
        run(*synth_args(tmp_path, seed=1, suffix="a"))
        run(*synth_args(tmp_path, seed=2, suffix="b"))
        assert (tmp_path / "camsa.csv").read_bytes() != (tmp_path / "camsb.csv").read_bytes()

    def test_two_by_two_grid(self, tmp_path):
        r = run(*synth_args(tmp_path, rows=2, cols=2, cameras=0))
        assert r.exit_code == 0
        stats = json.loads(r.output)
        assert stats == {"nodes": 4, "ways": 4, "cameras": 0, "seed": 1}
        model = osm.parse_osm((tmp_path / "map.osm").read_bytes())
        assert len(model.ways) == 4

    def test_zero_cameras_header_only(self, tmp_path):
        run(*synth_args(tmp_path, cameras=0))
        assert (tmp_path / "cams.csv").read_bytes() == \
            b"id,lat,lon,type,radius,angle,direction\n"

    def test_invalid_grid(self, tmp_path):
        r = run(*synth_args(tmp_path, rows=1))
        assert r.exit_code == 2
        assert "error" in json.loads(r.output)


class TestPreprocess:
    def run_pipeline(self, tmp_path, suffix=""):
        run(*synth_args(tmp_path, seed=5))
        return run("preprocess", "--osm", str(tmp_path / "map.osm"),
                   "--cameras", str(tmp_path / "cams.csv"),
                   "--out-osm", str(tmp_path / f"aug{suffix}.osm"),
                   "--out-weights", str(tmp_path / f"w{suffix}.csv"))

    def test_pipeline_and_stats(self, tmp_path):
        r = self.run_pipeline(tmp_path)
        assert r.exit_code == 0
        stats = json.loads(r.output)
        assert stats["cameras_added"] == 4
        assert set(stats) == {"cameras_added", "ways_split", "boundary_nodes"}
        weights = (tmp_path / "w.csv").read_text()
        assert weights.startswith("from,to,coverage\n")

    def test_rerun_byte_identical(self, tmp_path):
        self.run_pipeline(tmp_path, "1")
        self.run_pipeline(tmp_path, "2")
        assert (tmp_path / "aug1.osm").read_bytes() == (tmp_path / "aug2.osm").read_bytes()
        assert (tmp_path / "w1.csv").read_bytes() == (tmp_path / "w2.csv").read_bytes()

    def test_missing_input(self, tmp_path):
        r = run("preprocess", "--osm", str(tmp_path / "nope.osm"),
                "--cameras", str(tmp_path / "nope.csv"),
                "--out-osm", str(tmp_path / "a.osm"),
                "--out-weights", str(tmp_path / "w.csv"))
        assert r.exit_code == 2
        assert "error" in json.loads(r.output)

    def test_already_augmented_rejected(self, tmp_path):
        self.run_pipeline(tmp_path)
        r = run("preprocess", "--osm", str(tmp_path / "aug.osm"),
                "--cameras", str(tmp_path / "cams.csv"),
                "--out-osm", str(tmp_path / "aug2.osm"),
                "--out-weights", str(tmp_path / "w2.csv"))
        assert r.exit_code == 2


class TestRoute:
    def prepare(self, tmp_path, cameras):
        nodes = {1: (0.0, 0.0), 2: (600.0, 0.0)}
        ways = {1: ([1, 2], {"highway": "path", "width": "2"})}
        model = model_from_local(nodes, ways)
        augmented = pp.augment(model, cameras)
        (tmp_path / "aug.osm").write_bytes(osm.write_osm(augmented.model))
        (tmp_path / "w.csv").write_bytes(pp.emit_weights(augmented))

    @staticmethod
    def latlon(x, y):
        p = geopoint_at(x, y)
        return f"{p.lat:.7f},{p.lon:.7f}"

    def test_default_route(self, tmp_path):
        self.prepare(tmp_path, [round_camera(1, 300, 0, 50.0)])
        r = run("route", "--osm", str(tmp_path / "aug.osm"),
                "--weights", str(tmp_path / "w.csv"),
                "--from", self.latlon(0, 0), "--to", self.latlon(600, 0))
        assert r.exit_code == 0
        body = json.loads(r.output)
        assert body["status"] == "complete"
        assert abs(body["distance_m"] - 600.0) < 1.0
        assert body["cameras_passed"] == 1
        assert body["points"]

    def test_geojson_flag(self, tmp_path):
        self.prepare(tmp_path, [])
        r = run("route", "--osm", str(tmp_path / "aug.osm"),
                "--weights", str(tmp_path / "w.csv"),
                "--from", self.latlon(0, 0), "--to", self.latlon(600, 0),
                "--geojson")
        body = json.loads(r.output)
        assert body["geometry"]["type"] == "LineString"
        assert "points" not in body

    def test_no_route_exit_3(self, tmp_path):
        # FoV chain blankets everything within 500 m of the destination
        self.prepare(tmp_path, [round_camera(i + 1, x, 0, 80.0)
                                for i, x in enumerate((160, 300, 440, 580))])
        r = run("route", "--osm", str(tmp_path / "aug.osm"),
                "--weights", str(tmp_path / "w.csv"),
                "--from", self.latlon(0, 0), "--to", self.latlon(600, 0),
                "--mode", "privacy")
        assert r.exit_code == 3
        assert json.loads(r.output)["status"] == "none"

    def test_bad_coordinates_exit_2(self, tmp_path):
        self.prepare(tmp_path, [])
        r = run("route", "--osm", str(tmp_path / "aug.osm"),
                "--weights", str(tmp_path / "w.csv"),
                "--from", "not-a-point", "--to", self.latlon(0, 0))
        assert r.exit_code == 2

    def test_unknown_mode_rejected_by_click(self, tmp_path):
        self.prepare(tmp_path, [])
        r = run("route", "--osm", str(tmp_path / "aug.osm"),
                "--weights", str(tmp_path / "w.csv"),
                "--from", self.latlon(0, 0), "--to", self.latlon(600, 0),
                "--mode", "teleport")
        assert r.exit_code == 2


class TestServe:
    def test_bad_config_exit_2(self, tmp_path):
        cfg = tmp_path / "svc.json"
        cfg.write_text(json.dumps({"port": -1}))
        r = run("serve", "--config", str(cfg))
        assert r.exit_code == 2
        assert "error" in json.loads(r.output)

    def test_missing_config_exit_2(self, tmp_path):
        r = run("serve", "--config", str(tmp_path / "nope.json"))
        assert r.exit_code == 2
