from nearbinary.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_p6(capsys):
    code, out, _ = run(capsys, "check", "catalog:P6", "--class", "Z")
    assert code == 1
    assert out.startswith("NO: P6 is an excluded minor")


def test_check_yes_and_d(capsys):
    assert run(capsys, "check", "catalog:W3", "--class", "R")[0] == 0
    code, out, _ = run(capsys, "check", "catalog:M4rr", "--class", "D")
    assert code == 0 and "X = e2e3e4e5" in out
    assert run(capsys, "check", "catalog:U24", "--class", "binary")[0] == 1


def test_classify_whirl(capsys):
    code, out, _ = run(capsys, "classify", "catalog:W3")
    assert code == 0
    assert "case: relaxation of binary" in out and "parent: MK4" in out


def test_round_trip_through_files(capsys, tmp_path):
    code, out, _ = run(capsys, "catalog", "MK4")
    path = tmp_path / "k4.txt"
    path.write_text(out)
    code, out, _ = run(capsys, "relax", str(path), "--set", "def")
    assert code == 0
    relaxed = tmp_path / "w3.txt"
    relaxed.write_text(out)
    code, out, _ = run(capsys, "tighten", str(relaxed), "--basis", "def")
    assert code == 0 and out.splitlines()[2] == (path.read_text().splitlines()[2])


def test_minor_and_treedec(capsys):
    code, out, _ = run(capsys, "minor", "catalog:R6", "--target", "U24", "--using", "a")
    assert code == 0 and out.startswith("contract")
    assert run(capsys, "minor", "catalog:MK4", "--target", "U24")[1] == "none\n"
    code, out, _ = run(capsys, "treedec", "catalog:R6")
    assert code == 0 and out.count("node") == 2


def test_show_and_errors(capsys):
    code, out, _ = run(capsys, "show", "catalog:Q6")
    assert code == 0 and "circuit-hyperplanes: bce acf" in out
    code, _, err = run(capsys, "show", "catalog:nothing")
    assert code == 2 and "unknown matroid name" in err
    code, _, err = run(capsys, "relax", "catalog:MK4", "--set", "abc")
    assert code == 2


def test_verify_section4_writes_report(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--suite", "section4", "--out", str(tmp_path))
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])
    assert (tmp_path / "report.txt").exists() and (tmp_path / "summary.tsv").exists()
    assert (tmp_path / "timings.png").stat().st_size > 0


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and "P6\t6 elements\trank 3" in out
