"""Smoke test for the blockcheck Python extension.

Build and install first, e.g. `pip install maturin && maturin develop -m crates/py/Cargo.toml`
or `pip install --no-build-isolation ./crates/py`, then run `python python/smoke_test.py`.
"""

import os
import sys
import tempfile

import blockcheck

CORPUS = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "corpus")


def corpus(name):
    return os.path.join(CORPUS, name)


def check(cond, what):
    if not cond:
        raise AssertionError(what)
    print("ok:", what)


def main():
    check(blockcheck.SCHEMA == "blockcheck-report/1", "schema constant")

    s3 = blockcheck.Group.from_generators([[1, 2, 0], [1, 0, 2]], name="s3")
    check((s3.order, s3.degree, len(s3)) == (6, 3, 6), "S3 from generators")
    check(s3.contains([0, 2, 1]) and not s3.is_abelian(), "membership and abelian test")
    t = s3.character_table()
    check(len(t) == 3 and t.degrees == [1, 1, 2], "S3 character degrees")
    check(sum(d * d for d in t.degrees) == s3.order, "sum of squared degrees")
    check(t.check() == [], "table invariants")
    check(t.real_character_count() == t.real_class_count() == 3, "permutation lemma on S3")
    blocks = t.blocks(3)
    check(len(blocks) == 1 and blocks[0]["defect"] == "1", "S3 has one 3-block of defect 1")

    g = blockcheck.parse_group_file(corpus("sg24_4.grp"))
    check(g.order == 24 and g.name == "sg24_4", "group file parsing")
    r = g.verify(2)
    nonprincipal = [b for b in r["blocks"] if not b["summary"]["is_principal"]]
    check(len(r["blocks"]) == 2 and len(nonprincipal) == 1, "sg24_4 has two 2-blocks")
    b = nonprincipal[0]
    check((b["k_rv"], b["d_real_in_d"]) == ("4", "2"), "k_rv(B) = 4 and 2 D-real elements")
    c1 = next(v for v in b["conjectures"] if v["id"] == "C1")
    check(c1["holds"], "C1 holds")

    report, passed = blockcheck.verify(corpus("m11.grp"), 11, force_odd_prime=True, expect_violation=True)
    check(passed and report["outcome"]["violation_count"] != "0", "forced M11 at 11 reports a violation")
    _, passed = blockcheck.verify(corpus("m11.grp"), 11, force_odd_prime=True)
    check(not passed, "the violation fails verification without expect_violation")

    bare = blockcheck.report(corpus("d8.grp"), 2)
    check(bare["order"] == "8" and bare["prime"] == "2", "bare report")
    check(blockcheck.table(corpus("s3.grp")) == blockcheck.table(corpus("s3.grp")), "table dump is stable")
    check(blockcheck.blocks(corpus("s4.grp"), 2)["kind"] == "blocks", "blocks envelope")

    with tempfile.TemporaryDirectory() as d:
        bad = os.path.join(d, "bad.grp")
        with open(bad, "w") as f:
            f.write(open(corpus("s3.grp")).read().replace("[1,0,2]", "[1,1,2]"))
        try:
            blockcheck.parse_group_file(bad)
            check(False, "bad generator rejected")
        except blockcheck.ParseError as e:
            check("bad.grp:8:" in str(e), "parse errors carry line numbers")

    os.environ["BLOCKCHECK_MAX_ORDER"] = "100"
    try:
        blockcheck.parse_group_file(corpus("m11.grp")).character_table()
        check(False, "capacity error raised")
    except blockcheck.CapacityError as e:
        check("stage" in str(e), "capacity errors name the stage")
    finally:
        del os.environ["BLOCKCHECK_MAX_ORDER"]
    check(issubclass(blockcheck.CapacityError, blockcheck.BlockcheckError), "exception hierarchy")
    print("smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
