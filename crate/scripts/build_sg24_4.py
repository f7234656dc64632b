"""Writes corpus/sg24_4.grp as the pullback of S3 -> C2 <- Q8 inside S3 x Q8.

S3 acts on points 0..2 and Q8 (regular) on points 3..10. The surjection
Q8 -> C2 has kernel <i>, with i = the first generator of corpus/q8.grp.
"""
import json
import pathlib

root = pathlib.Path(__file__).resolve().parent.parent
q8 = json.loads((root / "corpus" / "q8.grp").read_text())
i, j = q8["generators"]


def product(s, q):
    return list(s) + [3 + x for x in q]


ident3, ident8 = [0, 1, 2], list(range(8))
gens = [
    product([1, 2, 0], ident8),  # (3-cycle, 1): both map to 0 in C2
    product(ident3, i),          # (1, i): i lies in the kernel
    product([1, 0, 2], j),       # (transposition, j): both map to 1 in C2
]
record = {
    "name": "sg24_4",
    "degree": 11,
    "declared_order": "24",
    "provenance": "pullback of sign: S3 -> C2 and Q8 -> C2 (kernel <i>) inside S3 x Q8; "
    "SmallGroup(24,4) = C3 : Q8 (built by scripts/build_sg24_4.py)",
    "generators": gens,
}
head = json.dumps({k: v for k, v in record.items() if k != "generators"}, indent=2)[:-2]
rows = ",\n".join("    " + json.dumps(g, separators=(",", ":")) for g in gens)
out = head + ',\n  "generators": [\n' + rows + "\n  ]\n}\n"
(root / "corpus" / "sg24_4.grp").write_text(out)
