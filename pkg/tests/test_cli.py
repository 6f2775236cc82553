"""CLI subcommands as thin adapters: outputs match direct module calls."""

import json

import pytest

from seqrank.cli import main
from seqrank.core import PLURALITY, Profile, Ranking, parse_profile, serialize_profile
from seqrank.kemeny import kemeny_rankings
from seqrank.majority import WeightedMajorityGraph, mcgarvey_realize, serialize_graph
from seqrank.rules import Rule, run_seq_winner
from seqrank.sampling import MallowsParams, sample_mallows


@pytest.fixture
def p0_file(tmp_path, p0):
    path = tmp_path / "p0.prof"
    path.write_text(serialize_profile(p0))
    return path


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSample:
    def test_requires_seed(self, capsys, tmp_path):
        with pytest.raises(SystemExit) as err:
            main(["sample", "--model", "ic", "--m", "3", "--n", "4"])
        assert err.value.code == 2

    def test_matches_module(self, capsys, tmp_path):
        out_file = tmp_path / "s.prof"
        code, _, _ = run_cli(
            capsys, "sample", "--model", "mallows", "--m", "5", "--n", "9",
            "--norm-phi", "0.4", "--seed", "11", "-o", str(out_file),
        )
        assert code == 0
        direct = sample_mallows(MallowsParams(5, 0.4), 9, 11)
        assert parse_profile(out_file.read_text()) == direct

    def test_mallows_needs_norm_phi(self, capsys):
        code, _, err = run_cli(capsys, "sample", "--model", "mallows", "--m", "3", "--n", "2", "--seed", "1")
        assert code == 1 and "norm-phi" in err


class TestAggregate:
    def test_worked_example(self, capsys, p0_file):
        code, out, err = run_cli(
            capsys, "aggregate", "--rule", "seqwin:plurality", "--tiebreak", "0,1,2", str(p0_file)
        )
        assert code == 0
        assert out.strip() == "0 1 2"
        assert "tiebreak: 0 1 2" in err

    def test_matches_module(self, capsys, p0_file, p0):
        code, out, _ = run_cli(
            capsys, "aggregate", "--rule", "seqlose:plurality", "--tiebreak", "1,2,0", str(p0_file)
        )
        from seqrank.rules import run_seq_loser

        direct = run_seq_loser(p0, PLURALITY, Ranking([1, 2, 0])).output
        assert tuple(int(x) for x in out.split()) == direct.order


class TestEnumerate:
    def test_worked_example(self, capsys, p0_file):
        code, out, _ = run_cli(capsys, "enumerate", "--rule", "seqlose:plurality", str(p0_file))
        assert code == 0
        assert out.splitlines() == ["1 0 2", "2 0 1"]

    def test_limit(self, capsys, p0_file):
        code, out, _ = run_cli(
            capsys, "enumerate", "--rule", "score:plurality", "--limit", "1", str(p0_file)
        )
        assert out.splitlines() == ["0 1 2"]


class TestDetermine:
    def test_yes_with_witness(self, capsys, p0_file, p0):
        code, out, _ = run_cli(
            capsys, "determine", "--rule", "stv", "--candidate", "1", "--position", "1", str(p0_file)
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "YES"
        witness = [int(x) for x in lines[1].split()[1:]]
        from seqrank.reductions import witness_replay

        assert witness_replay(p0, witness, Rule("seqlose", PLURALITY))

    def test_no(self, capsys, p0_file):
        code, out, _ = run_cli(
            capsys, "determine", "--rule", "stv", "--candidate", "0", "--position", "1", str(p0_file)
        )
        assert code == 0 and out.strip() == "NO"

    def test_algo_flags(self, capsys, p0_file):
        for algo in ("dp", "stv", "brute"):
            code, out, _ = run_cli(
                capsys, "determine", "--rule", "stv", "--candidate", "0",
                "--position", "2", "--algo", algo, str(p0_file),
            )
            assert code == 0 and out.splitlines()[0] == "YES"


class TestKemeny:
    def test_matches_module(self, capsys, p0_file, p0):
        code, out, _ = run_cli(capsys, "kemeny", str(p0_file))
        assert code == 0
        lines = out.splitlines()
        selected, opt = kemeny_rankings(p0)
        assert lines[0] == f"optimum {opt}"
        assert lines[1:] == sorted(" ".join(str(c) for c in r.order) for r in selected)


class TestRealize:
    def test_mcgarvey_round_trip(self, capsys, tmp_path):
        import numpy as np

        w = np.zeros((4, 4), dtype=np.int64)
        w[0, 1], w[1, 0] = 4, -4
        w[2, 3], w[3, 2] = 2, -2
        graph = WeightedMajorityGraph(4, w)
        graph_file = tmp_path / "g.txt"
        graph_file.write_text(serialize_graph(graph))
        out_file = tmp_path / "g.prof"
        code, _, _ = run_cli(capsys, "realize", "--mode", "mcgarvey", str(graph_file), "-o", str(out_file))
        assert code == 0
        assert parse_profile(out_file.read_text()) == mcgarvey_realize(graph).canonicalize()

    def test_bilevel(self, capsys, tmp_path):
        spec = tmp_path / "b.txt"
        spec.write_text("4\nC: 0\nD: 1\nC: 2\nD: 3\n")
        code, out, _ = run_cli(capsys, "realize", "--mode", "bilevel", str(spec))
        assert code == 0
        assert parse_profile(out).n == 2


class TestReduce:
    def test_stv_sat(self, capsys, tmp_path):
        inst = tmp_path / "f.cnf"
        inst.write_text("p cnf 1 2\n1 -1 0\n1 -1 0\n")
        out_file = tmp_path / "f.prof"
        code, out, _ = run_cli(
            capsys, "reduce", "--type", "stv-sat", "--input", str(inst), "-o", str(out_file)
        )
        assert code == 0
        assert "designated 0" in out
        assert parse_profile(out_file.read_text()).m == 2 + 2 + 2

    def test_hitting_set(self, capsys, tmp_path):
        inst = tmp_path / "h.txt"
        inst.write_text("u 1 2\nl 1\ns 1\ns 2\n")
        code, out, _ = run_cli(capsys, "reduce", "--type", "seqwiveto-hs", "--input", str(inst))
        assert code == 0 and "k 2" in out


class TestAxiomsCommand:
    def test_check(self, capsys, p0_file):
        code, out, _ = run_cli(
            capsys, "axioms", "--axiom", "condorcet-winner-top", "--rule", "kemeny",
            "--check", str(p0_file),
        )
        assert code == 0 and out.strip() == "HOLDS"

    def test_search_requires_seed(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["axioms", "--axiom", "condorcet-winner-top", "--rule", "stv", "--search"])
        assert err.value.code == 2

    def test_search_finds(self, capsys):
        code, out, _ = run_cli(
            capsys, "axioms", "--axiom", "condorcet-winner-top", "--rule", "stv",
            "--search", "--budget", "50000", "--seed", "4",
        )
        assert code == 0 and out.splitlines()[0] == "VIOLATION"


class TestExperimentCommand:
    def test_end_to_end(self, capsys, tmp_path):
        config = {
            "model": "mallows",
            "params": [0.0],
            "m": 4,
            "n": 6,
            "samples": 5,
            "seed": 2,
            "rules": ["stv"],
            "pairs": [["stv", "seqwin:plurality"]],
            "metrics": ["pairwise", "ties"],
        }
        cfg = tmp_path / "config.json"
        cfg.write_text(json.dumps(config))
        code, out, _ = run_cli(
            capsys, "experiment", "--config", str(cfg), "-o", str(tmp_path / "out")
        )
        assert code == 0
        assert (tmp_path / "out" / "pairwise.csv").exists()
        assert (tmp_path / "out" / "ties.csv").exists()


class TestErrors:
    def test_domain_error_exit_1(self, capsys, p0_file):
        code, _, err = run_cli(
            capsys, "determine", "--rule", "stv", "--candidate", "9", "--position", "1", str(p0_file)
        )
        assert code == 1 and "error:" in err

    def test_missing_file_exit_1(self, capsys):
        code, _, err = run_cli(capsys, "kemeny", "missing.prof")
        assert code == 1
