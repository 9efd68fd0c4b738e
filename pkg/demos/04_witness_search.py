"""Searching for trees that need many colors.

Small trees are enumerated exhaustively, then seeded random ones follow.
Each candidate's exact chromatic number comes from a backtracking search,
and the best tree comes with a certificate: an optimal coloring plus a
completed search showing one color fewer fails.
"""

# %%
from qtcolor import EDGE, CORNER, check_certificate, find_witness, io
from qtcolor.oracle import SearchBudget, candidate_trees

rep = find_witness(EDGE, 4, False, source=candidate_trees(max_splits=4))
print("found:", rep.found, "chi:", rep.chi, "leaves:", len(rep.tree))
print("re-verified:", check_certificate(rep))

# %% The certificate is plain JSON.
print(io.witness_to_json(rep)[:120], "...")

# %% Balanced trees with corner contact: this takes a while (tens of seconds).
rep = find_witness(CORNER, 5, True, budget=SearchBudget(max_candidates=10**5))
print("found:", rep.found, "chi:", rep.chi, "after", rep.candidates_tried, "candidates")
