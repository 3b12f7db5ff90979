# %% [markdown]
# # Quantum Pi
#
# Adding the gates `H`, `S` and `T` at `1 + 1` turns permutations into
# unitaries.  Sums become direct sums and products become tensor products.

# %%
import numpy as np

from revpi.effects import clone
from revpi.generators import random_density, random_pipeline
from revpi.parser import parse
from revpi.quantum import (
    born_probabilities,
    denote_q,
    iso_lift,
    measure,
    stinespring_normalize,
)
from revpi.syntax import ONE, TOFFOLI, Prod, Sum

np.set_printoptions(precision=3, suppress=True)
bit = Sum(ONE, ONE)
print(denote_q(parse("H ; H"), bit, bit))
print(np.abs(denote_q(parse("T ; T"), bit, bit) - denote_q(parse("S"), bit, bit)).max())

three = Prod(bit, Prod(bit, bit))
print(denote_q(TOFFOLI, three, three).real.astype(int))

# %% [markdown]
# Classical cloning becomes an isometry, and cloning followed by discarding
# the copy is computational-basis measurement.

# %%
c = clone(bit)
print(iso_lift(c.body, bit, c.hidden, Prod(bit, bit)).real)
plus = np.full((2, 2), 0.5)
print(measure(bit)(plus))
print(born_probabilities(random_density(np.random.default_rng(0), 3)))

# %% [markdown]
# Any pipeline of unitaries, preparations and discards collapses into one
# preparation, one unitary and one discard.

# %%
rng = np.random.default_rng(3)
dim, stages = random_pipeline(rng, max_dim=12)
print([type(s).__name__ for s in stages])
ch = stinespring_normalize(stages, dim)
print(ch.dom_dim, "->", ch.cod_dim, "via", ch.unitary.shape, "discarding", ch.discard_dim)
print(ch.is_trace_preserving(), ch.choi_min_eigenvalue())
