import io
import json
import subprocess
import sys


from bkphurwitz.cli import load_config, run


def call(*argv, env=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def report(*argv):
    code, out, err = call(*argv, "--no-timing")
    assert code == 0, err
    return json.loads(out)


def test_hurwitz_character_and_oracle():
    r = report("hurwitz", "--euler", "1", "--degree", "3")
    assert r["results"]["value"] == "2/3" and r["schema"] == 1
    r = report("hurwitz", "--euler", "1", "--degree", "3", "--oracle")
    assert r["results"]["value"] == "2/3"
    assert r["results"]["method"] == "monodromy-oracle"


def test_equal_weight_profiles_are_accepted():
    r = report("hurwitz", "--euler", "1", "--degree", "3", "--profiles", "[2,1];[3]")
    assert r["results"]["euler_cover"] == 0


def test_weight_mismatch_exit_code():
    code, _, err = call("hurwitz", "--euler", "1", "--degree", "3", "--profiles", "[2,1];[2]")
    assert code == 2 and "profile #2" in err


def test_bad_flags_exit_code():
    assert call("hurwitz", "--euler", "x", "--degree", "3")[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("hurwitz", "--euler", "1", "--degree", "3", "--transitive")[0] == 2


def test_timing_field():
    code, out, _ = call("chartable", "--degree", "2")
    assert "timing" in json.loads(out)
    assert "timing" not in report("chartable", "--degree", "2")


def test_deterministic_output():
    a = call("symfun", "--family", "macdonald", "--mu", "[2,1]", "--q", "1/3", "--t", "2", "--no-timing")
    b = call("symfun", "--family", "macdonald", "--mu", "[2,1]", "--q", "1/3", "--t", "2", "--no-timing")
    assert a == b


def test_chartable_csv():
    code, out, _ = call("chartable", "--degree", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 4


def test_symfun_schur():
    r = report("symfun", "--family", "schur", "--mu", "[2]")
    assert {tuple(x["delta"]): x["coefficient"] for x in r["results"]["p_expansion"]} == \
        {(2,): "1/2", (1, 1): "1/2"}


def test_content():
    r = report("content", "--lambda", "[2,1]", "--param-ii", "xi=[1];t=2;xi0=1", "--n", "1")
    assert r["results"]["exponent"] == "10 * h"
    assert call("content", "--lambda", "[2,1]")[0] == 2


def test_tau_extract():
    r = report("tau", "--truncate", "3", "--extract-profile", "[3]")
    assert r["results"]["coefficient"] == "1/3"   # H^{1,1}(3; (3))
    r = report("tau", "--truncate", "3", "--extract-profile", "[2,1]")
    assert r["results"]["coefficient"] == "0"
    r = report("tau", "--weight-table=-3:1,-2:1,-1:1,0:1,1:1,2:1,3:1", "--truncate", "3")
    assert len(r["results"]["coefficients"]) == 5  # 1, p1, p1^2, p1^3, p3


def test_tau_table_window():
    assert call("tau", "--weight-table=0:1", "--truncate", "3")[0] == 2


def test_weighted():
    r = report("weighted", "--family", "C", "--mu", "[1]", "--degree", "3", "--profile", "[2,1]",
               "--from-tau")
    assert r["results"]["agree"] is True
    assert call("weighted", "--family", "K", "--degree", "2", "--profile", "[2]")[0] == 2


def test_verify_passes():
    r = report("verify", "--suite", "content", "--max-degree", "3")
    assert r["results"]["all_pass"] is True and r["results"]["checks"] > 0


def test_config_file(tmp_path, monkeypatch):
    cfg = tmp_path / "c.conf"
    cfg.write_text("# defaults\np_degree = 2\n")
    monkeypatch.setenv("BKPHURWITZ_CONFIG", str(cfg))
    assert load_config()["p_degree"] == 2
    r = report("tau")
    assert r["inputs"]["truncate"] == 2
    assert report("tau", "--p-degree", "3")["inputs"]["truncate"] == 3
    cfg.write_text("bogus = 1\n")
    assert call("tau")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bkphurwitz", "hurwitz", "--euler", "2",
                           "--degree", "2", "--profiles", "[2];[2]", "--no-timing"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["value"] == "1/2"
