# %% [markdown]
# # Programs as permutations
#
# A ground program denotes a permutation of the canonical enumeration of
# its domain.  The enumeration is left-biased: all `inl` values come before
# all `inr` values, and pairs are ordered lexicographically.

# %%
import itertools

import numpy as np

from revpi import laws
from revpi.generators import random_typed_comb
from revpi.models import Permutation, denote, denote_by_eval, equiv, synth_perm
from revpi.parser import parse, print_comb
from revpi.syntax import CNOT, ID, ONE, Prod, Sum, nat_type, values

bits = Prod(Sum(ONE, ONE), Sum(ONE, ONE))
print([str(v) for v in values(bits)])
print(denote(CNOT, bits, bits))

# %% [markdown]
# The denotation is computed from the typing derivation; tabulating the
# interpreter gives the same answer.

# %%
rng = np.random.default_rng(0)
c, dom, cod = random_typed_comb(rng, max_size=16, depth=6)
print(print_comb(c))
print(denote(c, dom, cod) == denote_by_eval(c, dom, cod))

# %% [markdown]
# Equivalence is decided by comparing permutations.

# %%
print(equiv(parse("swap+ ; swap+"), ID, Sum(ONE, ONE), Sum(ONE, ONE)))
print(equiv(parse("swapx ; swapx"), parse("swapx"), bits, bits))

# %% [markdown]
# Every permutation is reachable.  `synth_perm` routes through the canonical
# type `1 + (1 + ... + 0)` and sorts with adjacent transpositions.

# %%
p = Permutation((2, 0, 3, 1))
term = synth_perm(p, bits)
print(denote(term, bits, bits) == p, len(print_comb(term)), "characters")

counts = {n: 0 for n in range(1, 5)}
for n in counts:
    b = nat_type(n)
    for q in itertools.permutations(range(n)):
        counts[n] += denote(synth_perm(Permutation(q), b), b, b).image == q
print(counts)

# %% [markdown]
# Coherence equations hold semantically, e.g. the pentagon for `+`.

# %%
law = laws.pentagon_plus(ONE, Sum(ONE, ONE), ONE, ONE)
print(denote(law.lhs, law.dom, law.cod) == denote(law.rhs, law.dom, law.cod))
