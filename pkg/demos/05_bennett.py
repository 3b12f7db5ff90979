# %% [markdown]
# # Reversible Turing machines
#
# A deterministic machine can merge computation paths, so it is not
# backward-deterministic.  Logging every fired rule on a history tape fixes
# that; Bennett's trick then removes the history again.

# %%
from revpi.bennett import (
    bennett,
    check_backward_deterministic,
    corpus,
    landauer_instrument,
    run,
    run_bennett,
    unwind,
)

machines = corpus()
inc = machines["binary-increment"]
result = run(inc, "011")
print(result.status, result.steps, result.config.output())
print(check_backward_deterministic(inc))

# %% [markdown]
# Landauer instrumentation: tape 2 records which rule fired at each step.

# %%
logged = landauer_instrument(inc)
print(check_backward_deterministic(logged).ok)
out = run(logged, "011")
print(out.config.symbols(0), out.config.symbols(1))
back = unwind(inc, out.config)
print(back.config.symbols(0), back.config.symbols(1))

# %% [markdown]
# Compute, copy the output to a third tape, then uncompute.  The result is
# the input, an empty history and the output.

# %%
composite = bennett(inc)
print(len(composite.rules), "rules;", check_backward_deterministic(composite).ok)
for name, tm in machines.items():
    word = {"unary-addition": "11+111"}.get(name, "0111")
    print(name, run_bennett(tm, word).tapes)
