# %% [markdown]
# # Writing and running Pi programs
#
# Pi programs are isomorphisms between finite types built from `0`, `1`,
# `+` and `*`.  Booleans are `1 + 1`, with `inl ()` as false and `inr ()`
# as true.

# %%
from revpi.evaluate import evaluate, invert, reval
from revpi.parser import parse, parse_value, print_comb, print_value
from revpi.syntax import values
from revpi.typecheck import check, infer

# %% [markdown]
# Controlled-not: distribute over the control bit, flip the target in the
# `true` branch, and factor back.

# %%
cnot = parse("dist ; id + id * swap+ ; factor")
print(infer(cnot))

# %% [markdown]
# The principal type is polymorphic in the target.  Pinning it down to two
# bits gives a ground derivation that the interpreter can run.

# %%
two_bits = parse("(dist ; id + id * swap+ ; factor) : (1+1)*(1+1) <-> (1+1)*(1+1)")
d = check(two_bits, two_bits.dom, two_bits.cod)
for v in values(d.dom):
    print(print_value(v), "->", print_value(evaluate(cnot, v)))

# %% [markdown]
# Every program runs backwards.  `reval` interprets each primitive by its
# dual, and `invert` produces the inverse program as syntax.

# %%
out = evaluate(cnot, parse_value("(inr (), inl ())"))
print(print_value(out), "<-", print_value(reval(cnot, out)))
print(print_comb(invert(parse("swap+ ; assocr+ ; id + swapx"))))

# %% [markdown]
# Ill-typed compositions are rejected by unification.

# %%
try:
    infer(parse("dist ; unitexl"))
except Exception as err:
    print(type(err).__name__, err)
