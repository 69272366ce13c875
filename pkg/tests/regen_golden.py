"""Rewrite the CLI golden files. Run from the repository root:

    python tests/regen_golden.py
"""

from pathlib import Path

from click.testing import CliRunner

from walksym.cli import cli

HERE = Path(__file__).parent
DATA = HERE / "data"

# (golden file, argv, expected exit code)
CASES = [
    ("classify_disorder.json", ["classify", "disorder.json"], 3),
    ("classify_disorder_zero_diagonal.json", ["classify", "disorder.json", "--zero-diagonal"], 0),
    ("classify_disorder_edgelist.json", ["classify", "disorder.edges", "--format", "edgelist"], 3),
    ("invariants_disorder.json", ["invariants", "disorder.json"], 0),
    ("canon_disorder.json", ["canon", "disorder.json"], 0),
    ("equiv_disorder.json", ["equiv", "disorder.json", "disorder_regauged.json"], 0),
    ("equiv_disorder_flux.json", ["equiv", "disorder.json", "disorder_flux.json"], 3),
    ("simulate_disorder.csv", ["simulate", "disorder.json", "--grid", "2:4"], 0),
    ("simulate_disorder_source.csv",
     ["simulate", "disorder.json", "--grid", "1:2", "--source", "1", "--full"], 0),
    ("currents_disorder.json", ["currents", "disorder.json", "-t", "0.5", "-t", "1.0"], 0),
    ("currents_cyclic.json",
     ["currents", "cyclic_generator.edges", "--kind", "stochastic", "-t", "1.0"], 0),
]


def run(argv):
    argv = [str(DATA / a) if (DATA / a).exists() else a for a in argv]
    return CliRunner().invoke(cli, argv, catch_exceptions=False)


if __name__ == "__main__":
    for name, argv, code in CASES:
        result = run(argv)
        assert result.exit_code == code, (name, result.exit_code, result.output)
        (HERE / "golden" / name).write_text(result.stdout)
        print("wrote", name)
