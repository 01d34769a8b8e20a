# Duals of the discrete norm on cyclic groups.
#
# The discrete norm is 1 off the identity.  Its dual only sees the order of
# a character: order-two characters hit the antipode, odd orders stop short.

from fractions import Fraction

from metricdual import character_order, discrete_norm, dual, is_regular, make_group, regularise

for n in (6, 9, 12):
    G = make_group([n])
    d = dual(discrete_norm(G))
    row = {a[0]: str(d(a)) for a in G.elements}
    print(f"Z/{n}: dual of delta", row)

# every value depends only on the order k of the character
G = make_group([12])
d = dual(discrete_norm(G))
for a in G.elements:
    k = character_order(G, a)
    print(f"  a={a[0]:2d} order {k:2d} -> {d(a)}")

# On Z/9 the elements 3 and 6 have order 3, and delta is not regular there
G = make_group([9])
delta = discrete_norm(G)
reg = regularise(delta)
print("Z/9 regularised:", [str(reg(x)) for x in G.elements])
rep = is_regular(delta)
x, a, b = rep.witness
print("regular?", rep.is_regular, f"witness x={x[0]}: reg={a}, delta={b}")

# the value 3/4 sits inside the window [2/3, 5/6]
v = reg((3,))
print(Fraction(2, 3) <= v <= Fraction(5, 6), v)

# Z/4: every nonzero element has even order, so delta is already regular
print("Z/4 regular?", is_regular(discrete_norm(make_group([4]))).is_regular)
