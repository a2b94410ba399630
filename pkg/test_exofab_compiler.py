import io
import json
import logging
from pathlib import Path

import pytest

from calibration_table import TimeModel, estimate_fabrication_time
from design_files import load_design_spec
from dst_codec import read_dst, read_dst_document
from exofab_compiler import (
    CALIBRATION_ENV,
    EXIT_DOMAIN_ERROR,
    EXIT_OK,
    EXIT_USAGE,
    ExoFabricCompiler,
    main,
)
from stitch_geometry import compile_plan

COOKBOOK = Path(__file__).with_name("cookbook")
GOLDEN = COOKBOOK / "golden"
GOLDEN_SPECS = ("splint", "bra", "lampshade")


@pytest.fixture(autouse=True)
def restore_logging():
    """main() herconfigureert de root logger; zet die na elke test terug"""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


def _run(*argv):
    out = io.StringIO()
    status = main(list(argv), stdout=out)
    return status, out.getvalue()


def _generate(spec_name, out_dir):
    status, _ = _run("-q", "generate", str(COOKBOOK / f"{spec_name}.spec"), "--out-dir", str(out_dir))
    assert status == EXIT_OK
    return {suffix: (out_dir / f"{spec_name}.{suffix}").read_bytes() for suffix in ("dst", "svg", "txt")}


# predict

def test_predict_prints_force():
    assert _run("predict", "--config", "L2_S5", "--fabric", "nonstretch-336",
                "--displacement", "10") == (EXIT_OK, "2.4 N\n")


def test_predict_tensile_upper_bound():
    status, out = _run("predict", "--config", "L2_S15", "--fabric", "stretch-390",
                       "--displacement", "20", "--mode", "tensile")
    assert status == EXIT_OK
    assert out == "< 7 N\n"


def test_predict_with_mold_adds_formability():
    status, out = _run("predict", "--config", "L1_S5", "--fabric", "stretch-390",
                       "--displacement", "19", "--geometry", "bra-dome", "--mold", "20")
    assert status == EXIT_OK
    assert out.splitlines() == ["1.8 N", "formability good"]


@pytest.mark.parametrize(
    "argv",
    [
        ("predict", "--config", "L2_S5", "--fabric", "silk", "--displacement", "10"),
        ("predict", "--config", "L2_S5", "--fabric", "nonstretch-336", "--displacement", "30"),
        ("predict", "--config", "L2_S5", "--fabric", "nonstretch-336", "--displacement", "-1"),
        ("predict", "--config", "L2_S5", "--fabric", "nonstretch-336", "--displacement", "10",
         "--mode", "tensile"),
    ],
)
def test_domain_errors_exit_one(argv, capsys):
    status, out = _run(*argv)
    assert status == EXIT_DOMAIN_ERROR
    assert out == ""
    assert "✗" in capsys.readouterr().err


def test_calibration_from_environment(tmp_path, monkeypatch):
    extra = tmp_path / "extra.csv"
    extra.write_text(
        "geometry_tag,config,fabric,layers,mode,displacement_mm,force_n,provenance,bound\n"
        "swatch-100,L2_S5,nonstretch-336,1,compression,20,4.0,external,exact\n",
        encoding="utf-8",
    )
    argv = ("predict", "--config", "L2_S5", "--fabric", "nonstretch-336", "--displacement", "15")
    assert _run(*argv)[0] == EXIT_DOMAIN_ERROR
    monkeypatch.setenv(CALIBRATION_ENV, str(extra))
    assert _run(*argv) == (EXIT_OK, "3.2 N\n")


# Gebruiksfouten

def test_usage_errors_exit_two(tmp_path, capsys):
    assert _run("time", str(tmp_path / "missing.spec"))[0] == EXIT_USAGE
    assert _run("generate", str(COOKBOOK / "splint.spec"))[0] == EXIT_USAGE
    assert _run("preview", str(COOKBOOK / "splint.spec"), "--svg", str(tmp_path / "no" / "x.svg"))[0] == EXIT_USAGE
    assert _run("predict", "--config", "L2_S5")[0] == EXIT_USAGE
    assert _run()[0] == EXIT_USAGE
    assert "input file not found" in capsys.readouterr().err


def test_version_line():
    status, out = _run("--version")
    assert status == EXIT_OK
    assert out == "exofab_compiler 1.0.0 (calibration table 2024.1)\n"


# solve

def test_solve_report():
    status, out = _run("-q", "solve", str(COOKBOOK / "splint.req"))
    assert status == EXIT_OK
    assert "Result: feasible" in out
    assert "L0.66_S1" in out


def test_infeasible_solve_is_not_an_error(tmp_path):
    req = tmp_path / "stiff.req"
    req.write_text("[requirements]\nmin_compression_n = 200\nmin_compression_at_mm = 20\n", encoding="utf-8")
    status, out = _run("-q", "solve", str(req), "--json")
    assert status == EXIT_OK
    data = json.loads(out)
    assert data["reason"] == "infeasible"
    assert data["nearest_miss"]["config"] == "L0.66_S1"


def test_solve_with_workers_matches(tmp_path):
    path = str(COOKBOOK / "bra.req")
    assert _run("-q", "solve", path, "--json", "--workers", "3") == _run("-q", "solve", path, "--json")


# generate, preview, time, instructions

def test_generate_writes_all_outputs(tmp_path):
    outputs = _generate("splint", tmp_path)
    spec = load_design_spec(COOKBOOK / "splint.spec")
    plan = compile_plan(spec.region, spec.config, spec.layers)
    decoded = read_dst(outputs["dst"])
    expected = plan.normalized().quantized()
    assert [(p.x, p.y, p.kind) for p in decoded.points] == [(p.x, p.y, p.kind) for p in expected.points]
    assert read_dst_document(outputs["dst"]).name == "splint"
    assert outputs["svg"].startswith(b"<?xml")
    assert b"embroider 4 copies and stack" in outputs["txt"]


def test_generate_with_explicit_paths(tmp_path):
    dst = tmp_path / "bra.dst"
    status, out = _run("-q", "generate", str(COOKBOOK / "bra.spec"), "--dst", str(dst))
    assert status == EXIT_OK
    assert out == ""
    assert dst.is_file()
    assert sorted(p.name for p in tmp_path.iterdir()) == ["bra.dst"]


@pytest.mark.parametrize("spec_name", GOLDEN_SPECS)
def test_generate_is_deterministic(spec_name, tmp_path):
    assert _generate(spec_name, tmp_path / "a") == _generate(spec_name, tmp_path / "b")


@pytest.mark.parametrize("spec_name", GOLDEN_SPECS)
def test_generate_matches_golden(spec_name, tmp_path, request):
    outputs = _generate(spec_name, tmp_path)
    golden = {suffix: GOLDEN / f"{spec_name}.{suffix}" for suffix in outputs}
    if request.config.getoption("--update-goldens"):
        GOLDEN.mkdir(exist_ok=True)
        for suffix, path in golden.items():
            path.write_bytes(outputs[suffix])
    missing = [path.name for path in golden.values() if not path.is_file()]
    if missing:
        pytest.fail(f"golden ontbreekt: {', '.join(missing)} (maak aan met pytest --update-goldens)")
    for suffix, path in golden.items():
        assert outputs[suffix] == path.read_bytes(), f"{spec_name}.{suffix} wijkt af van golden"


def test_preview_and_time(tmp_path):
    svg = tmp_path / "lamp.svg"
    assert _run("-q", "preview", str(COOKBOOK / "lampshade.spec"), "--svg", str(svg))[0] == EXIT_OK
    assert "<polyline" in svg.read_text(encoding="utf-8")
    status, out = _run("-q", "time", str(COOKBOOK / "splint.spec"))
    assert status == EXIT_OK
    assert out.endswith(" min\n")
    assert float(out.split()[0]) > 0.0


def test_instructions_to_stdout_and_file(tmp_path):
    status, out = _run("-q", "instructions", str(COOKBOOK / "bra.spec"))
    assert status == EXIT_OK
    assert "concentric rings" in out
    target = tmp_path / "bra.txt"
    assert _run("-q", "instructions", str(COOKBOOK / "bra.spec"), "-o", str(target)) == (EXIT_OK, "")
    assert target.read_text(encoding="utf-8") == out


def test_validation_errors_block_generation(tmp_path):
    spec = tmp_path / "thin.spec"
    text = (COOKBOOK / "splint.spec").read_text(encoding="utf-8")
    spec.write_text(text.replace("layers = 4", "layers = 4\nthread = tex35-nylon"), encoding="utf-8")
    assert _run("-q", "generate", str(spec), "--out-dir", str(tmp_path / "out"))[0] == EXIT_DOMAIN_ERROR
    assert not (tmp_path / "out" / "thin.dst").exists()


# Foutmeldingen en tijdmodel

def test_domain_error_names_the_input_file(tmp_path, capsys):
    spec = tmp_path / "wide.spec"
    text = (COOKBOOK / "splint.spec").read_text(encoding="utf-8")
    spec.write_text(text.replace("layers = 4", "layers = 9"), encoding="utf-8")
    assert _run("-q", "time", str(spec)) == (EXIT_DOMAIN_ERROR, "")
    err = capsys.readouterr().err
    assert f"✗ {spec}: ParseError: line 7: layers must be within 1..4" in err


def test_requirements_error_names_the_input_file(tmp_path, capsys):
    req = tmp_path / "bad.req"
    req.write_text("[requirements]\nmin_compression_n = lots\n", encoding="utf-8")
    assert _run("-q", "solve", str(req))[0] == EXIT_DOMAIN_ERROR
    assert f"✗ {req}: ParseError: line 2:" in capsys.readouterr().err


def test_instructions_use_the_compiler_time_model(tmp_path):
    out = io.StringIO()
    compiler = ExoFabricCompiler(stdout=out)
    # Ankers twee keer zo traag als de meegeleverde tabel
    compiler.model = TimeModel.from_anchors((("L0.66_S1", 40.0), ("L2_S15", 10.0)))
    assert compiler.instructions(str(COOKBOOK / "splint.spec")) == EXIT_OK

    spec = load_design_spec(COOKBOOK / "splint.spec")
    plan = compile_plan(spec.region, spec.config, spec.layers)
    minutes = estimate_fabrication_time(plan, compiler.model)
    assert minutes == pytest.approx(2.0 * estimate_fabrication_time(plan))
    assert f"about {minutes:.1f} min of embroidery" in out.getvalue()
