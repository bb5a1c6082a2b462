"""CLI dispatch, output formats, and exit codes."""

import json

from hassecurves.cli import EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION, dispatch


def test_generate_reproduction(capsys):
    code = dispatch(["generate", "--p", "7", "--n", "7", "--reproduce-section5",
                     "--format", "latex", "--height", "20", "--local-bound", "100"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "(X^3+7Y^3)(X^2+4XY+16Y^2)(16X^2+4XY+Y^2) = 262193^4Z^7" in out


def test_generate_summary_format(capsys):
    code = dispatch(["generate", "--p", "3", "--n", "9", "--height", "20",
                     "--local-bound", "100"])
    out = capsys.readouterr().out
    assert code == EXIT_OK and "p=3" in out and "verified=True" in out


def test_generate_degree_incompatible(capsys):
    code = dispatch(["generate", "--p", "7", "--n", "9"])
    err = capsys.readouterr().err
    assert code == EXIT_USAGE and "divisible" in err


def test_usage_error_exit_code(capsys):
    assert dispatch(["generate", "--p", "7"]) == EXIT_USAGE
    assert dispatch(["no-such-command"]) == EXIT_USAGE
    assert dispatch([]) == EXIT_USAGE


def test_density_command(capsys):
    code = dispatch(["density", "--prime-bound", "100"])
    out = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    lo, hi = map(eval, (f"({v})" for v in out["d_M"]))  # fractions as strings
    assert 0 < out["d_M_float"] < 1


def test_unit_command(capsys):
    code = dispatch(["unit", "--P", "14"])
    out = capsys.readouterr().out.strip()
    assert code == EXIT_OK
    assert out == "14 29 12 5 1 reduction"


def test_unit_command_enumeration(capsys):
    code = dispatch(["unit", "--P", "7", "--backend", "enumeration"])
    out = capsys.readouterr().out.strip()
    assert code == EXIT_OK and out == "7 4 2 1 1 enumeration"


def test_search_primes_pairs(capsys):
    code = dispatch(["search-primes", "--P", "7", "--iota", "1", "--count", "3",
                     "--template", "section5"])
    lines = capsys.readouterr().out.strip().splitlines()
    assert code == EXIT_OK
    got = [json.loads(line) for line in lines]
    assert got[0] == {"b": 1, "c": 4, "q": 71}
    assert got[1] == {"b": 4, "c": 1, "q": 449}
    assert got[2] == {"b": 34, "c": -65, "q": 503}


def test_search_primes_descent(capsys):
    code = dispatch(["search-primes", "--P", "11", "--iota", "1", "--kind", "descent",
                     "--count", "1", "--min-l", "12"])
    out = json.loads(capsys.readouterr().out.strip())
    assert code == EXIT_OK and out == {"a": 100, "c": 1, "l": 1000121}


def test_search_primes_infers_p_for_2p(capsys):
    code = dispatch(["search-primes", "--P", "14", "--iota", "1", "--count", "1"])
    assert code == EXIT_OK


def test_aacm_scan_command(tmp_path, capsys):
    cache = tmp_path / "units.cache"
    code = dispatch(["aacm-scan", "--max", "30", "--cache", str(cache)])
    lines = capsys.readouterr().out.strip().splitlines()
    summary = json.loads(lines[-1])
    assert code == EXIT_OK
    assert summary["exceptions"] == 0 and summary["skipped"] == []
    assert cache.exists() and len(cache.read_text().splitlines()) >= 10
    # cached second run
    code2 = dispatch(["aacm-scan", "--max", "30", "--cache", str(cache)])
    assert code2 == EXIT_OK


def test_aacm_scan_diagnostic(capsys):
    code = dispatch(["aacm-scan", "--max", "5", "--include-p3"])
    lines = capsys.readouterr().out.strip().splitlines()
    assert code == EXIT_OK
    rows = [json.loads(line) for line in lines[:-1]]
    assert {r["p"] for r in rows} == {3}
    assert all(r["beta_mod_p"] == 0 for r in rows)


def test_verify_roundtrip(tmp_path, capsys):
    code = dispatch(["generate", "--p", "7", "--n", "7", "--reproduce-section5",
                     "--format", "json", "--height", "20", "--local-bound", "100"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    path = tmp_path / "curve.json"
    path.write_text(out.strip().splitlines()[0])
    code = dispatch(["verify", "--input", str(path), "--local-bound", "100", "--height", "20"])
    result = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK and result["overall"] is True


def test_verify_detects_tampering(tmp_path, capsys):
    dispatch(["generate", "--p", "7", "--n", "7", "--reproduce-section5",
              "--format", "json", "--height", "20", "--local-bound", "100"])
    record = json.loads(capsys.readouterr().out.strip().splitlines()[0])
    record["descent"]["m"] = 2
    record["L"] = record["descent"]["l"] ** 2
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(record))
    code = dispatch(["verify", "--input", str(path), "--local-bound", "50", "--height", "10"])
    result = json.loads(capsys.readouterr().out)
    assert code == EXIT_VERIFICATION and result["overall"] is False


def test_verify_missing_file(capsys):
    assert dispatch(["verify", "--input", "/nonexistent/x.json"]) == EXIT_USAGE
