"""Command-line behavior: flags, exit codes, pipes, file outputs."""

from __future__ import annotations

import subprocess
import sys
from pathlib import Path

import pytest

from bnodematch import graphs_equivalent, load_graph
from bnodematch.cli import main

FIXTURES = Path(__file__).parent / "fixtures"
G1 = str(FIXTURES / "g1.nt")
G2 = str(FIXTURES / "g2.nt")
G2NB = str(FIXTURES / "g2_no_birthday.nt")
G3 = str(FIXTURES / "g3.nt")
G4 = str(FIXTURES / "g4.nt")


def test_no_arguments_is_a_usage_error(capsys):
    assert main([]) == 2
    capsys.readouterr()


def test_unknown_subcommand_is_a_usage_error(capsys):
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


def test_version_flag(capsys):
    assert main(["--version"]) == 0
    assert "bnodematch" in capsys.readouterr().out


class TestDiffPatch:
    def test_plain_diff_counts_eleven(self, tmp_path, capsys):
        out = tmp_path / "d.rdfd"
        assert main(["diff", "--plain", G1, G2, "-o", str(out)]) == 0
        ops = [l for l in out.read_text().splitlines() if l[:2] in ("A ", "D ")]
        assert len(ops) == 11
        capsys.readouterr()

    def test_matched_diff_counts_one(self, tmp_path, capsys):
        out = tmp_path / "d.rdfd"
        assert main(["diff", G1, G2, "-o", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert "M 1 2" in lines
        assert sum(1 for l in lines if l[:2] in ("A ", "D ")) == 1
        capsys.readouterr()

    def test_patch_reproduces_the_target(self, tmp_path, capsys):
        delta = tmp_path / "d.rdfd"
        patched = tmp_path / "out.nt"
        main(["diff", G1, G2, "-o", str(delta)])
        assert main(["patch", G1, str(delta), "-o", str(patched)]) == 0
        assert graphs_equivalent(load_graph(str(patched)), load_graph(G2))
        capsys.readouterr()

    def test_source_label_diff(self, tmp_path, capsys):
        out = tmp_path / "d.rdfd"
        assert main(["diff", "--labels", "source", G2, G3, "-o", str(out)]) == 0
        assert out.read_text().startswith("# direction=source-labels\n")
        capsys.readouterr()

    def test_refuses_to_overwrite_an_input(self, capsys):
        assert main(["diff", G1, G2, "-o", G1]) == 2
        assert "refusing" in capsys.readouterr().err

    def test_parse_errors_exit_three(self, tmp_path, capsys):
        bad = tmp_path / "bad.nt"
        bad.write_text("not ntriples\n")
        assert main(["diff", str(bad), G2]) == 3
        capsys.readouterr()

    def test_missing_file_exits_three(self, capsys):
        assert main(["diff", "/nonexistent/g.nt", G2]) == 3
        capsys.readouterr()


def test_diff_patch_pipe_round_trips_byte_identically(tmp_path):
    # diff to stdout, patch from stdin, compare canonical serializations
    diff = subprocess.run(
        [sys.executable, "-m", "bnodematch", "diff", G1, G2],
        capture_output=True, check=True,
    )
    patch = subprocess.run(
        [sys.executable, "-m", "bnodematch", "patch", G1, "-"],
        input=diff.stdout, capture_output=True, check=True,
    )
    canonical = subprocess.run(
        [sys.executable, "-m", "bnodematch", "patch", G2,  "-"],
        input=b"# direction=target-labels\n", capture_output=True, check=True,
    )
    assert patch.stdout == canonical.stdout


class TestDecisionCommands:
    def test_equiv_yes_prints_the_bijection(self, capsys):
        assert main(["equiv", G1, G2NB]) == 0
        assert capsys.readouterr().out.strip() == "M 1 2"

    def test_equiv_no(self, capsys):
        assert main(["equiv", G1, G2]) == 1
        capsys.readouterr()

    def test_entail_yes_prints_the_witness(self, capsys):
        assert main(["entail", G2, G1]) == 0
        assert capsys.readouterr().out.strip() == "M 1 _:2"

    def test_entail_no(self, capsys):
        assert main(["entail", G1, G2]) == 1
        capsys.readouterr()


def test_match_writes_the_mapping_file(tmp_path, capsys):
    out = tmp_path / "m.bm"
    assert main(["match", G2, G3, "-o", str(out)]) == 0
    text = out.read_text()
    assert text.splitlines()[0] == "M 2 3"
    assert "cost=8" in text
    capsys.readouterr()


def test_integrate_writes_merged_graph(tmp_path, capsys):
    out = tmp_path / "merged.nt"
    rc = main(["integrate", G1, G2, G3, G4, "--equiv", "suffix", "-o", str(out)])
    assert rc == 0
    err = capsys.readouterr().err
    assert "bnode link: src1_1 src2_2" in err
    assert "bnode link: src3_3 src4_4" in err
    merged = load_graph(str(out))
    assert "sameAs" in "".join(t.p.value for t in merged)


def test_integrate_review_reads_decisions_from_stdin(tmp_path, capsys, monkeypatch):
    import io

    out = tmp_path / "merged.nt"
    monkeypatch.setattr("sys.stdin", io.StringIO("n\n"))
    rc = main(["integrate", G1, G2, "--equiv", "suffix", "--review", "-o", str(out)])
    assert rc == 0
    assert "bnode link" not in capsys.readouterr().err


def test_sameas_equiv_flag(tmp_path, capsys):
    pairs = tmp_path / "pairs.nt"
    pairs.write_text(
        "<http://www.example.com/music/v0/John_Lennon> "
        "<http://www.w3.org/2002/07/owl#sameAs> "
        "<http://www.dbpedia.org/John_Lennon> .\n"
    )
    out = tmp_path / "merged.nt"
    rc = main(["integrate", G3, G4, "--equiv", f"sameas:{pairs}", "-o", str(out)])
    assert rc == 0
    capsys.readouterr()


def test_bad_equiv_value_is_usage_error(capsys):
    assert main(["diff", G1, G2, "--equiv", "fuzzy"]) == 2
    capsys.readouterr()


class TestVersionStoreCommands:
    def test_full_cycle(self, tmp_path, capsys):
        repo = str(tmp_path / "repo")
        assert main(["vs", "init", repo, G1]) == 0
        assert main(["vs", "commit", repo, G2]) == 0
        assert main(["vs", "commit", repo, G3]) == 0
        out = tmp_path / "v2.nt"
        assert main(["vs", "checkout", repo, "2", "-o", str(out)]) == 0
        assert graphs_equivalent(load_graph(str(out)), load_graph(G2))
        patch_file = tmp_path / "p.rdfd"
        assert main(["vs", "patch", repo, "--from", "1", "--to", "3",
                     "-o", str(patch_file)]) == 0
        assert patch_file.read_text().startswith("# direction=target-labels\n")
        capsys.readouterr()

    def test_checkout_out_of_range_is_usage_error(self, tmp_path, capsys):
        repo = str(tmp_path / "repo")
        main(["vs", "init", repo, G1])
        assert main(["vs", "checkout", repo, "9"]) == 2
        capsys.readouterr()

    def test_missing_repo_is_io_error(self, tmp_path, capsys):
        assert main(["vs", "checkout", str(tmp_path / "nope"), "1"]) == 3
        capsys.readouterr()


def test_gen_and_bench(tmp_path, capsys):
    pairs_root = tmp_path / "pairs"
    for seed in (1, 2):
        rc = main([
            "gen", "--bnodes", "4", "--triples", "3", "--connectivity", "0.5",
            "--mutations", "2", "--seed", str(seed),
            "-o", str(pairs_root / f"pair{seed}"),
        ])
        assert rc == 0
    csv_out = tmp_path / "bench.csv"
    assert main(["bench", str(pairs_root), "-o", str(csv_out)]) == 0
    lines = csv_out.read_text().splitlines()
    assert lines[0] == "instance,tier,cost,optimum_bound,wall_time_s"
    assert len(lines) == 1 + 2 * 2  # two configurations per pair
    capsys.readouterr()
