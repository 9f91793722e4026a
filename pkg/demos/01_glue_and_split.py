# Gluing and splitting structures at a cut vertex.
# Run: python3 demos/01_glue_and_split.py

# %%
from fractions import Fraction

from arithstruct import (
    ArithmeticalStructure,
    Multigraph,
    Piece,
    RationalStructure,
    blocks_and_cut_vertices,
    glue,
    glue_all,
    r_from_d,
    split,
    verify,
)

# %% two triangles sharing z
G = Multigraph(
    ["x1", "x2", "z", "y1", "y2"],
    [("x1", "x2"), ("x1", "z"), ("x2", "z"), ("z", "y1"), ("z", "y2"), ("y1", "y2")],
)
print(blocks_and_cut_vertices(G))

d = (2, 3, 2, 3, 7)
r = r_from_d(G, d)
print("r from d:", r)
print(verify(G, d, r))

# %% split at z: each side gets a share of d_z, rational in general
s = ArithmeticalStructure(d, r)
pieces = split(G, "z", s)
for p in pieces:
    print(p.graph.vertices, [str(a) for a in p.structure.d], p.structure.r)

shares = [p.structure.d[p.graph.index("z")] for p in pieces]
print("shares at z:", [str(a) for a in shares], "sum", sum(shares))

# %% and glue them back
H, back = glue_all(pieces)
print(back == s, back)

# %% two stars glued leaf-to-center
S3 = Multigraph(["o", "v", "p", "q"], [("o", "v"), ("o", "p"), ("o", "q")])
S2 = Multigraph(["v", "a", "b"], [("v", "a"), ("v", "b")])
H, t = glue(
    Piece(S3, "v", ArithmeticalStructure((1, 2, 3, 6), (6, 3, 2, 1))),
    Piece(S2, "v", ArithmeticalStructure((2, 1, 1), (1, 1, 1))),
)
print(H.vertices, t.d, t.r)

# rational pieces whose shares at v add to an integer also glue to a structure
H, t = glue(
    Piece(S3, "v", RationalStructure((3, Fraction(2, 3), 1, 2), (2, 3, 2, 1), {"v"})),
    Piece(S2, "v", RationalStructure((Fraction(1, 3), 6, 6), (6, 1, 1), {"v"})),
)
print(H.vertices, t.d, t.r)
