from __future__ import annotations

import json

import pytest

from pentacrystal.cli.app import EXIT_FAILED, EXIT_OK, EXIT_USAGE, build_context, run
from pentacrystal.config import Config
from pentacrystal.paths import schema_path
from pentacrystal.storage.repositories import Database, RepositoryProvider


async def _context(tmp_path):
    config = Config(
        db_path=tmp_path / "ledger.sqlite",
        output_dir=tmp_path / "out",
        default_depth=3,
        group_cap=100_000,
        crystal_window=16,
        reach_budget=3,
        tiling_seed=0,
        svg_scale=120,
        log_level="INFO",
    )
    db = Database(config.db_path, schema_path())
    await db.ensure_schema()
    return build_context(config, RepositoryProvider.build(db))


@pytest.mark.asyncio
async def test_augmented_order_prints_120(tmp_path, capsys):
    """`coxeter order --m 5 --augmented` prints the order of A_4 and records the run."""
    ctx = await _context(tmp_path)
    code = await run(["coxeter", "order", "--m", "5", "--augmented"], ctx)
    assert code == EXIT_OK
    assert capsys.readouterr().out.strip() == "120"
    runs = await ctx.repositories.runs.latest_runs("coxeter")
    assert len(runs) == 1 and runs[0]["ok"] is True
    assert runs[0]["parameters"]["m"] == 5


@pytest.mark.asyncio
async def test_no_record_skips_ledger(tmp_path, capsys):
    """--no-record leaves the ledger untouched."""
    ctx = await _context(tmp_path)
    assert await run(["coxeter", "order", "--m", "7", "--no-record"], ctx) == EXIT_OK
    assert capsys.readouterr().out.strip() == "14"
    assert await ctx.repositories.runs.latest_runs() == []


@pytest.mark.asyncio
async def test_usage_errors_exit_2(tmp_path):
    """Unknown verbs, bad arguments and mismatched rings are usage errors."""
    ctx = await _context(tmp_path)
    assert await run(["nonsense"], ctx) == EXIT_USAGE
    assert await run(["coxeter", "order", "--m", "five"], ctx) == EXIT_USAGE
    assert await run(["ring", "change", "--m", "8", "--basis", "chord", "--to", "alpha", "--a", "1,0,0,0"], ctx) == EXIT_USAGE
    assert await run(["cheb", "show", "--svg", str(tmp_path / "none.svg")], ctx) == EXIT_USAGE


@pytest.mark.asyncio
async def test_failed_check_exits_1(tmp_path):
    """An element outside the crystal has no normal form."""
    ctx = await _context(tmp_path)
    element = json.dumps([[0, 0]] * 5 + [[1, 0]])
    assert await run(["pentagon", "normal", "--element", element], ctx) == EXIT_FAILED


@pytest.mark.asyncio
async def test_cheb_show_json(tmp_path, capsys):
    """Q_4 factors because 9 is not prime."""
    ctx = await _context(tmp_path)
    assert await run(["cheb", "show", "--kind", "Q", "--n", "4", "--json"], ctx) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["degree"] == 4
    assert payload["irreducible"] is False


@pytest.mark.asyncio
async def test_ring_mul_in_pentagon(tmp_path, capsys):
    """p1 * p1 = p0 + p2 = 1 + p1 in the pentagon chord ring."""
    ctx = await _context(tmp_path)
    assert await run(["ring", "mul", "--m", "5", "--a", "0,1", "--b", "0,1", "--json"], ctx) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["result"]["coords"] == [1, 1]
    assert payload["result"]["basis"] == ["p0", "p1"]


@pytest.mark.asyncio
async def test_tile_nine_piece(tmp_path, capsys):
    """The nine-piece cut of p2 T{3,3,3} from the command line."""
    ctx = await _context(tmp_path)
    code = await run(["tile", "decompose", "--m", "9", "--angles", "3,3,3", "--method", "nine", "--json"], ctx)
    assert code == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["counts"] == {"T{1,3,5}": 3, "T{2,3,4}": 6}
    assert payload["failures"] == []


@pytest.mark.asyncio
async def test_pentagon_member(tmp_path, capsys):
    """The highest element satisfies every membership inequality."""
    ctx = await _context(tmp_path)
    assert await run(["pentagon", "member", "--element", "[]", "--json"], ctx) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["member"] is True


@pytest.mark.asyncio
async def test_render_root_diagram_to_path(tmp_path):
    """render writes an SVG with twenty root vertices where --svg points."""
    ctx = await _context(tmp_path)
    out = tmp_path / "roots.svg"
    assert await run(["render", "--target", "root-diagram", "--m", "5", "--svg", str(out)], ctx) == EXIT_OK
    assert out.read_text(encoding="utf-8").count("<circle") == 20


@pytest.mark.asyncio
async def test_render_default_path(tmp_path):
    """Without --svg the drawing lands in the output directory."""
    ctx = await _context(tmp_path)
    assert await run(["render", "--target", "weight-diagram", "--n", "2"], ctx) == EXIT_OK
    assert (tmp_path / "out" / "weight-diagram-n2.svg").exists()


@pytest.mark.asyncio
async def test_tile_reach_with_restricted_generators(tmp_path, capsys):
    """`tile reach --from` limits the starting triangles; T{1,1,5} alone is then out of reach."""
    ctx = await _context(tmp_path)
    assert await run(["tile", "reach", "--m", "7", "--angles", "1,1,5", "--from", "2,2,3;1,2,4;1,3,3", "--json"], ctx) == EXIT_FAILED
    assert json.loads(capsys.readouterr().out) == {"reached": False}
    assert await run(["tile", "reach", "--m", "7", "--angles", "1,1,5", "--json"], ctx) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["reached"] is True
