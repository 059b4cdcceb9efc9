"""Command-line pipeline: composition through files and exit codes."""

from __future__ import annotations

import json
import os

import pytest

from crossratio.cli import cli


def run(args):
    return cli(args)


@pytest.fixture()
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


class TestPipeline:
    def test_gen_draw_check_roundtrip(self, workdir):
        assert run(["gen", "--family", "oneplanar", "--ell", "7", "-o", "g.json"]) == 0
        assert run(["draw", "--style", "saturated", "-i", "g.json", "-o", "sat.json"]) == 0
        assert run(["check", "--pattern", "kplanar:1", "-i", "sat.json"]) == 0
        assert run(["draw", "--style", "min", "-i", "g.json", "-o", "min.json"]) == 0
        assert run(["check", "--pattern", "kplanar:1", "-i", "min.json"]) == 1
        assert run(["check", "--pattern", "quasi:3", "-i", "min.json"]) == 0

    def test_gen_deterministic_bytes(self, workdir):
        run(["gen", "--family", "quasi", "--ell", "3", "-o", "a.json"])
        run(["gen", "--family", "quasi", "--ell", "3", "-o", "b.json"])
        assert open("a.json").read() == open("b.json").read()

    def test_fan_check(self, workdir):
        run(["gen", "--family", "fan", "--ell", "3", "-o", "g.json"])
        run(["draw", "--style", "fan-planar", "-i", "g.json", "-o", "d.json"])
        assert run(["check", "--pattern", "fan", "-i", "d.json"]) == 0
        run(["draw", "--style", "min", "-i", "g.json", "-o", "m.json"])
        assert run(["check", "--pattern", "fan", "-i", "m.json"]) == 1

    def test_certify_and_cr(self, workdir):
        run(["gen", "--family", "quasi", "--ell", "2", "-o", "g.json"])
        assert run(["certify", "--at-least", "2", "-i", "g.json", "-o", "c.json"]) == 0
        cert = json.load(open("c.json"))
        assert cert["ok"] is True and cert["wall_time_ms"] == 0.0
        assert run(["cr", "--max-k", "3", "-i", "g.json", "-o", "cr.json"]) == 0
        cr = json.load(open("cr.json"))
        assert cr["claim"]["value"] == 3
        assert cr["witness"] is not None

    def test_certify_refuted_exit_one(self, workdir):
        run(["gen", "--family", "fan", "--ell", "2", "-o", "g.json"])
        assert run(["certify", "--at-least", "3", "-i", "g.json", "-o", "c.json"]) == 1
        cert = json.load(open("c.json"))
        assert cert["ok"] is False and cert["counterexample"] is not None

    def test_certificates_byte_identical(self, workdir):
        run(["gen", "--family", "quasi", "--ell", "2", "-o", "g.json"])
        run(["certify", "--at-least", "2", "-i", "g.json", "-o", "a.json"])
        run(["certify", "--at-least", "2", "-i", "g.json", "-o", "b.json"])
        assert open("a.json").read() == open("b.json").read()

    def test_forced_pair_flag(self, workdir):
        run(["gen", "--family", "quasi", "--ell", "2", "-o", "g.json"])
        assert run([
            "certify", "--at-least", "2", "--force", "C0xC3",
            "-i", "g.json", "-o", "c.json",
        ]) == 0

    def test_budget_exit_two(self, workdir):
        run(["gen", "--family", "quasi", "--ell", "2", "-o", "g.json"])
        assert run([
            "cr", "--max-k", "3", "--budget", "10", "-i", "g.json", "-o", "x.json",
        ]) == 2

    def test_render_and_export(self, workdir):
        run(["gen", "--family", "quasi", "--ell", "2", "-o", "g.json"])
        run(["draw", "--style", "min", "-i", "g.json", "-o", "d.json"])
        assert run(["render", "-i", "d.json", "-o", "d.svg"]) == 0
        assert open("d.svg").read().startswith("<?xml")
        assert run(["render", "-i", "d.json", "-o", "d.png"]) == 0
        assert os.path.getsize("d.png") > 1000
        assert run(["export", "--format", "dot", "-i", "g.json", "-o", "g.dot"]) == 0
        assert run(["export", "--format", "graphml", "-i", "g.json", "-o", "g.xml"]) == 0

    def test_render_deterministic(self, workdir):
        run(["gen", "--family", "fan", "--ell", "2", "-o", "g.json"])
        run(["draw", "--style", "min", "-i", "g.json", "-o", "d.json"])
        run(["render", "-i", "d.json", "-o", "one.svg"])
        run(["render", "-i", "d.json", "-o", "two.svg"])
        assert open("one.svg").read() == open("two.svg").read()

    def test_ratio_report_files(self, workdir):
        assert run([
            "ratio", "--family", "quasi", "--ell", "2", "--out-dir", "rep", "--json",
        ]) == 0
        assert os.path.exists("rep/ratio_quasi_2.csv")
        assert os.path.exists("rep/quasi_2_min.png")
        assert os.path.exists("rep/quasi_2_quasi-planar.png")
        assert os.path.exists("rep/quasi_2_certificate.json")
        header, row = open("rep/ratio_quasi_2.csv").read().strip().splitlines()
        assert "ratio" in header and "5/3" in row

    def test_usage_errors(self, workdir):
        assert run(["gen", "--family", "kquasi", "--ell", "2", "-o", "g.json"]) == 2
        assert run(["check", "--pattern", "kplanar:1", "-i", "missing.json"]) == 2
        run(["gen", "--family", "quasi", "--ell", "2", "-o", "g.json"])
        assert run(["check", "--pattern", "kplanar:1", "-i", "g.json"]) == 2
        assert run(["check", "--pattern", "bogus", "-i", "g.json"]) == 2

    def test_multi_family_pipeline(self, workdir):
        assert run([
            "gen", "--family", "oneplanar-multi", "--ell", "7", "--k", "2",
            "-o", "g.json",
        ]) == 0
        assert run(["draw", "--style", "saturated", "-i", "g.json", "-o", "d.json"]) == 0
        assert run(["check", "--pattern", "kplanar:2", "-i", "d.json"]) == 0
        assert run(["check", "--pattern", "kplanar:1", "-i", "d.json"]) == 1

    def test_kquasi_modes(self, workdir):
        assert run([
            "gen", "--family", "kquasi", "--ell", "2", "--k", "4",
            "--mode", "match-corollary", "-o", "g.json",
        ]) == 0
        doc = json.load(open("g.json"))
        assert len(doc["graph"]["vertices"]) == 2 * 4 * 3 + 1
