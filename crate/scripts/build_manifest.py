"""Writes corpus/manifest.json: every corpus file at p = 2, the M11
negative control at p = 11, and golden counts for the named examples."""
import json
import pathlib

root = pathlib.Path(__file__).resolve().parent.parent
corpus = root / "corpus"

highlights = {
    "sg24_4.grp": [
        {"prime": 2, "block": {"principal": False}, "source": "C3 : Q8 nonprincipal 2-block",
         "expect": {"summary.is_real": True, "summary.defect_group_order": "4",
                    "summary.defect_group.abelian_invariants": ["4"], "k_rv": "4",
                    "d_real_in_d": "2", "conjectures.C1.holds": True}},
        {"prime": 2, "source": "C3 : Q8, every irreducible character real",
         "expect": {"classes": "9", "real_classes": "9"}},
    ],
    "sg96_185.grp": [
        {"prime": 2, "block": {"principal": True}, "source": "self-normalizing Sylow 2-subgroup",
         "expect": {"k_rv": "14", "defect_group_k": "14", "defect_group_k_rv": "12",
                    "normalizer_order": "32", "g_real_in_d": "32", "d_real_in_d": "28"}},
        {"prime": 2, "source": "order-4 element real in one Sylow 2-subgroup only",
         "expect": {"sylow_reality_witness.element_order": "4"}},
    ],
    "m11.grp": [
        {"prime": 2, "block": {"principal": True}, "source": "M11 principal 2-block",
         "expect": {"k_rv": "6", "correspondent.k_rv": "5"}},
        {"prime": 11, "block": {"principal": True}, "source": "M11 at p = 11, C0 fails",
         "expect": {"summary.defect_group_order": "11", "k_rv": "3", "g_real_in_d": "1",
                    "conjectures.C0.holds": False, "correspondent.k_rv": "1"}},
    ],
    "sg288_375.grp": [
        {"prime": 2, "block": {"principal": False, "real": True, "defect_group_order": "8",
                               "abelian_invariants": ["8"]},
         "source": "real 2-block with cyclic defect group of order 8",
         "expect": {"g_real_in_d": "4", "n_real_in_d": "2", "theorems.samenumber.holds": True}},
    ],
}

entries = []
for path in sorted(corpus.glob("*.grp")):
    name = path.name
    entry = {"file": name, "primes": [2]}
    if name in highlights:
        entry["highlights"] = [h for h in highlights[name] if h["prime"] == 2]
    entries.append(entry)
    if name == "m11.grp":
        entries.append({"file": name, "primes": [11], "force_odd_prime": True,
                        "expect_violation": True,
                        "highlights": [h for h in highlights[name] if h["prime"] == 11]})

manifest = {"schema": "blockcheck-manifest/1", "entries": entries}
(corpus / "manifest.json").write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n")
