"""Command line interface: tokens, verbs, exit codes, JSON schema, caching."""

import json
import os

import pytest

import rainbowforce.cli as cli
from rainbowforce import path, replication_graph, star, to_graph6
from rainbowforce.cli import TokenError, _thread_count, main, parse_graph_token

_SCHEMA_KEYS = {
    "query",
    "graphs",
    "bounds",
    "verdict",
    "bad_coloring",
    "search",
    "stats",
    "engine_version",
}


@pytest.fixture(autouse=True)
def _isolated_env(tmp_path, monkeypatch):
    monkeypatch.setenv("XDG_CACHE_HOME", str(tmp_path / "cachehome"))
    monkeypatch.delenv("RHO_THREADS", raising=False)


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _json_out(capsys, argv):
    code, out, err = _run(capsys, argv)
    return code, json.loads(out)


# ---------------------------------------------------------------------------
# graph tokens

def test_token_bare_and_prefixed_graph6():
    g, s = parse_graph_token("Bg")
    assert g == path(3)
    assert s is None
    g2, _ = parse_graph_token("g6:Bg")
    assert g2 == g


def test_token_families():
    assert parse_graph_token("path:5")[0] == path(5)
    assert parse_graph_token("star:4")[0] == star(4)
    assert parse_graph_token("clique:3")[0].edge_count() == 3
    assert parse_graph_token("cycle:6")[0].degree_sequence() == (2,) * 6
    assert parse_graph_token("anticlique:4")[0].edge_count() == 0
    assert parse_graph_token("turan:7,3")[0].n == 7
    # the two multipartite spellings agree
    a, _ = parse_graph_token("kpartite:2,2,3")
    b, _ = parse_graph_token("multipartite:2,2,3")
    assert a == b


def test_token_size_suffix_builds_replication():
    g, s = parse_graph_token("path:5@1,2,2,2,3")
    want = replication_graph(path(5), (1, 2, 2, 2, 3))
    assert g == want.expanded
    assert s is not None and s.sizes == (1, 2, 2, 2, 3)


def test_token_files(tmp_path):
    edge_file = tmp_path / "p5.edges"
    edge_file.write_text("5 4\n0 1\n1 2\n2 3\n3 4\n")
    assert parse_graph_token(f"file:{edge_file}")[0] == path(5)
    g6_file = tmp_path / "p5.g6"
    g6_file.write_text(to_graph6(path(5)) + "\n")
    assert parse_graph_token(f"file:{g6_file}")[0] == path(5)


def test_token_errors():
    for bad in (
        "nosuch:3",
        "path:3,4",
        "turan:7",
        "path:x",
        "path:3@1,2",  # wrong number of block sizes
        "path:3@1,0,1",  # empty block
        "file:/definitely/not/here",
    ):
        with pytest.raises(TokenError):
            parse_graph_token(bad)


def test_bad_tokens_exit_two(capsys):
    code, out, err = _run(capsys, ["bounds", "nosuch:3"])
    assert code == 2
    assert "error:" in err
    code, _, _ = _run(capsys, ["verify", "--g", "path:3@9,9", "--h", "Bg"])
    assert code == 2


def test_thread_count_resolution(monkeypatch):
    assert _thread_count(5) == 5
    monkeypatch.setenv("RHO_THREADS", "3")
    assert _thread_count(None) == 3
    assert _thread_count(2) == 2  # explicit beats the environment
    monkeypatch.setenv("RHO_THREADS", "zebra")
    with pytest.raises(TokenError):
        _thread_count(None)
    monkeypatch.delenv("RHO_THREADS")
    assert _thread_count(None) >= 1


# ---------------------------------------------------------------------------
# bounds and construct

def test_bounds_json_schema(capsys):
    code, payload = _json_out(capsys, ["bounds", "path:4", "--json"])
    assert code == 0
    assert set(payload.keys()) == _SCHEMA_KEYS
    b = payload["bounds"]
    assert b["eq1_lower"] == 6
    assert b["eq1_upper"] == 7
    assert b["eq3"] == 6
    assert b["path_upper"] == 7
    assert payload["graphs"] == {"g": None, "h": "Ch"}
    assert payload["verdict"] is None and payload["search"] is None


def test_bounds_human_output(capsys):
    code, out, _ = _run(capsys, ["bounds", "path:4"])
    assert code == 0
    assert "general_lower=6" in out
    assert "bracket: [6, 7]" in out


def test_construct_block_witness(capsys):
    code, payload = _json_out(capsys, ["construct", "star:4", "--json"])
    assert code == 0
    assert payload["stats"]["order"] == 7
    assert payload["stats"]["sizes"] == [1, 1, 2, 3]
    assert payload["stats"]["blocks"] == [[0], [1], [2, 3], [4, 5, 6]]
    code, payload = _json_out(
        capsys, ["construct", "star:4", "--mode", "vertex", "--json"]
    )
    assert code == 0
    assert payload["stats"]["order"] == 7


# ---------------------------------------------------------------------------
# verify

def test_verify_forcing_exits_zero(capsys):
    code, payload = _json_out(
        capsys, ["verify", "--g", "CN", "--h", "path:3", "--json", "--no-cache"]
    )
    assert code == 0
    assert payload["verdict"] is True
    assert payload["bad_coloring"] is None
    assert payload["stats"]["cached"] is False


def test_verify_negative_shows_counterexample(capsys):
    code, payload = _json_out(
        capsys, ["verify", "--g", "path:4", "--h", "path:3", "--json", "--no-cache"]
    )
    assert code == 1
    assert payload["verdict"] is False
    assert payload["bad_coloring"] == [0, 1, 0, 1]


def test_verify_replication_mode(capsys):
    code, payload = _json_out(
        capsys,
        ["verify", "--g", "path:3@1,1,2", "--h", "path:3", "--mode", "R",
         "--json", "--no-cache"],
    )
    assert code == 0 and payload["verdict"] is True
    # same expansion via --sizes instead of the @ suffix
    code2, payload2 = _json_out(
        capsys,
        ["verify", "--g", "path:3", "--sizes", "1,1,2", "--h", "path:3",
         "--mode", "R", "--json", "--no-cache"],
    )
    assert code2 == 0
    assert payload2["graphs"]["g"] == payload["graphs"]["g"]
    # both spellings at once is an input error
    code3, _, err = _run(
        capsys,
        ["verify", "--g", "path:3@1,1,2", "--sizes", "1,1,2", "--h", "path:3",
         "--mode", "R"],
    )
    assert code3 == 2 and "error:" in err


def test_verify_replication_infers_blocks_from_twins(capsys):
    # the triangle-with-pendant host is a 3-path with one endpoint doubled;
    # strict mode recovers the blocks without an explicit size list
    code, payload = _json_out(
        capsys,
        ["verify", "--g", "Cx", "--h", "path:3", "--mode", "R", "--json",
         "--no-cache"],
    )
    assert code == 0 and payload["verdict"] is True
    # a host with no matching twin structure is rejected
    code2, _, err = _run(
        capsys, ["verify", "--g", "clique:3", "--h", "path:3", "--mode", "R"]
    )
    assert code2 == 2 and "error:" in err


def test_verify_strict_negative_maps_coloring_to_host_labels(capsys):
    code, payload = _json_out(
        capsys,
        ["verify", "--g", "path:3@1,1,1", "--h", "path:3", "--mode", "R",
         "--json", "--no-cache"],
    )
    assert code == 1
    assert payload["bad_coloring"] == [0, 1, 0]


def test_verify_oracle_route(capsys):
    code, payload = _json_out(
        capsys, ["verify", "--g", "CN", "--h", "path:3", "--json", "--oracle"]
    )
    assert code == 0 and payload["verdict"] is True
    assert payload["stats"] == {"oracle": True}
    code2, payload2 = _json_out(
        capsys,
        ["verify", "--g", "path:4", "--h", "path:3", "--json", "--oracle"],
    )
    assert code2 == 1 and payload2["verdict"] is False


def test_verify_budget_exhaustion_exits_three(capsys):
    code, _, err = _run(
        capsys,
        ["verify", "--g", "path:5@1,2,2,2,3", "--h", "path:5", "--budget", "1",
         "--no-cache"],
    )
    assert code == 3
    assert "budget" in err


def test_verify_cached_run_is_byte_identical(tmp_path, capsys):
    cache_file = str(tmp_path / "verdicts.jsonl")
    argv = ["verify", "--g", "CN", "--h", "path:3", "--json", "--cache", cache_file]
    code1, fresh = _json_out(capsys, argv)
    code2, replay = _json_out(capsys, argv)
    assert code1 == code2 == 0
    assert replay["stats"] == {"cached": True}
    fresh.pop("stats")
    replay.pop("stats")
    assert fresh == replay


def test_verify_cached_counterexample_replays(tmp_path, capsys):
    cache_file = str(tmp_path / "verdicts.jsonl")
    argv = ["verify", "--g", "path:4", "--h", "path:3", "--json",
            "--cache", cache_file]
    code1, fresh = _json_out(capsys, argv)
    code2, replay = _json_out(capsys, argv)
    assert code1 == code2 == 1
    assert replay["stats"] == {"cached": True}
    assert replay["bad_coloring"] == fresh["bad_coloring"] == [0, 1, 0, 1]
    # strict mode round trip, counterexample stored under the composite key
    argv_r = ["verify", "--g", "path:3@1,1,1", "--h", "path:3", "--mode", "R",
              "--json", "--cache", cache_file]
    code3, fresh_r = _json_out(capsys, argv_r)
    code4, replay_r = _json_out(capsys, argv_r)
    assert code3 == code4 == 1
    assert replay_r["bad_coloring"] == fresh_r["bad_coloring"] == [0, 1, 0]
    assert replay_r["stats"] == {"cached": True}


# ---------------------------------------------------------------------------
# searches

def test_rho_exact_three_path(capsys):
    code, payload = _json_out(
        capsys, ["rho", "--h", "path:3", "--json", "--no-cache"]
    )
    assert code == 0
    s = payload["search"]
    assert s["status"] == "exact"
    assert s["value"] == 4
    assert s["witness"] == "CN"
    assert s["orders_exhausted"] == [1, 2, 3]
    assert payload["stats"]["engine_calls"] >= 1


def test_rho_capped_is_a_definitive_negative(capsys):
    code, payload = _json_out(
        capsys,
        ["rho", "--h", "path:4", "--max-order", "6", "--json", "--no-cache"],
    )
    assert code == 1
    s = payload["search"]
    assert s["status"] == "bounded"
    assert s["lower"] == 7 and s["upper"] == 7


def test_rho_budget_exits_three(capsys):
    code, payload = _json_out(
        capsys,
        ["rho", "--h", "path:4", "--budget", "50", "--json", "--no-cache"],
    )
    assert code == 3
    assert payload["search"]["status"] == "budget"


def test_rho_r_exact_three_path(capsys):
    code, payload = _json_out(
        capsys, ["rho-r", "--h", "path:3", "--json", "--no-cache"]
    )
    assert code == 0
    s = payload["search"]
    assert s["status"] == "exact"
    assert s["value"] == 4
    assert s["witness"] == [1, 1, 2]


def test_rho_uses_cache_across_runs(tmp_path, capsys):
    cache_file = str(tmp_path / "verdicts.jsonl")
    argv = ["rho", "--h", "path:3", "--json", "--cache", cache_file]
    _json_out(capsys, argv)
    code, payload = _json_out(capsys, argv)
    assert code == 0
    assert payload["stats"]["engine_calls"] == 0
    assert payload["stats"]["cache_hits"] == 1


def test_interrupt_exits_130(capsys, monkeypatch):
    def boom(*a, **k):
        raise KeyboardInterrupt

    monkeypatch.setattr(cli, "min_forcing_order", boom)
    code, _, err = _run(capsys, ["rho", "--h", "path:3", "--no-cache"])
    assert code == 130
    assert "interrupted" in err


# ---------------------------------------------------------------------------
# cache verb

def test_cache_show_and_clear(tmp_path, capsys):
    cache_file = str(tmp_path / "verdicts.jsonl")
    _run(capsys, ["verify", "--g", "CN", "--h", "path:3", "--cache", cache_file])
    code, out, _ = _run(capsys, ["cache", "show", "--cache", cache_file])
    assert code == 0
    assert "entries" in out and ": 1" in out
    code, out, _ = _run(capsys, ["cache", "clear", "--cache", cache_file])
    assert code == 0
    assert not os.path.exists(cache_file)
    code, out, _ = _run(capsys, ["cache", "show", "--cache", cache_file])
    assert ": 0" in out


def test_missing_required_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--g", "CN"])
    assert exc.value.code == 2
