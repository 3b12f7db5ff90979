# %% [markdown]
# # Allocation, hiding and the fundamental theorem
#
# Allocation terms `b1 >-> b2` run a Pi program on `b1 + h` but only ever
# feed it `inl` inputs, so they denote injections.  Hiding terms `b1 ~> b2`
# additionally forget a garbage factor of the output, so they denote
# arbitrary functions.

# %%
import numpy as np

from revpi.effects import (
    alloc_equiv,
    alloc_id,
    alloc_seq,
    clone,
    discard,
    factorize,
    fst,
    hide_arr,
    hide_seq,
    measure_term,
)
from revpi.generators import random_alloc, random_function, random_type_of_size
from revpi.models import FinFun
from revpi.syntax import ONE, Sum

bit = Sum(ONE, ONE)
print("clone:", clone(bit).injection().mapping)
print("fst:", fst(bit, bit).function().table)
print("discard:", discard(bit).function().table)

# %% [markdown]
# Cloning followed by projection copies a value and throws the copy away.

# %%
print(measure_term(bit).function().table)
print(hide_seq(hide_arr(clone(bit)), fst(bit, bit)).function().table)

# %% [markdown]
# The arrow laws hold extensionally.

# %%
rng = np.random.default_rng(1)
t = random_alloc(rng, random_type_of_size(rng, 2))
s = random_alloc(rng, t.cod)
r = random_alloc(rng, s.cod)
print(alloc_equiv(alloc_seq(alloc_id(t.dom), t), t))
print(alloc_equiv(alloc_seq(alloc_seq(t, s), r), alloc_seq(t, alloc_seq(s, r))))

# %% [markdown]
# Every function factors as an injection into a larger set, a bijection,
# and a projection that discards garbage.

# %%
f = FinFun((0, 0, 2, 1), 3)
fac = factorize(f)
print(fac.heap, fac.garbage, fac.bij.image)
print(fac.recompose() == f, fac.as_hide_term().function() == f)

for _ in range(5):
    g = random_function(rng, max_size=6)
    print(g.table, "->", factorize(g).recompose() == g)
