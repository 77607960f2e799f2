"""A short walk through closed, exact and logarithmic forms over F_3(a, b)."""

from pforms import FieldContext, cartier, d, is_closed, is_exact, is_nu_member, wedge
from pforms.forms import artin_schreier_rep, dlog


def show(label, w):
    closed = is_closed(w)
    line = f"{label:<28} closed={closed!s:<5}"
    if closed:
        line += f" exact={is_exact(w)!s:<5} nu={is_nu_member(w)!s:<5} C(w) = {cartier(w)}"
    print(line)


def main():
    F = FieldContext(3, ("a", "b"))
    a, b = F.gens()
    show("d(a^2 b)", d(a ** 2 * b))
    show("a^2 da", a ** 2 * d(a))
    show("da/a", dlog(a))
    show("dlog(a+b) ^ dlog(b)", wedge(dlog(a + b), dlog(b)))
    show("b^3 da/a", b ** 3 * dlog(a))
    show("b da", b * d(a))
    w = b * dlog(a)
    print(f"\nArtin-Schreier representative of b da/a: {artin_schreier_rep(w)}")


if __name__ == "__main__":
    main()
