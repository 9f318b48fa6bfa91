"""Writes standard.qh. Run from this directory: python3 gen_standard.py"""
from itertools import permutations, product

R = (1, 2, 3)


def u(i, j):
    return f"u{i}{j}"


def qpow(k, sign=1):
    # coefficient text for sign * q^k, to prefix a word with '*'
    s = "-" if sign < 0 else ""
    if k == 0:
        return s + "1"
    return s + ("q" if k == 1 else f"q^{k}")


def term(c, w):
    return w if c == "1" else ("-" + w if c == "-1" else f"{c}*{w}")


def join(terms):
    out = ""
    for t in terms:
        if not out:
            out = t
        elif t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out or "0"


def inversions(p):
    return sum(1 for a in range(3) for b in range(a + 1, 3) if p[a] > p[b])


def su3_star(i, j):
    # (-q)^(j-i) (u_{i1 j1} u_{i2 j2} - q u_{i1 j2} u_{i2 j1})
    i1, i2 = [r for r in R if r != i]
    j1, j2 = [c for c in R if c != j]
    k = j - i
    sign = -1 if k % 2 else 1
    c1 = qpow(k, sign)
    c2 = qpow(k + 1, -sign)
    return join([term(c1, f"{u(i1, j1)}.{u(i2, j2)}"), term(c2, f"{u(i1, j2)}.{u(i2, j1)}")])


def qmatrix_rels():
    rels = []
    for i in R:
        for j, k in ((1, 2), (1, 3), (2, 3)):
            rels.append((f"qm1_{i}{j}{k}", f"{u(i, j)}.{u(i, k)} - q*{u(i, k)}.{u(i, j)}"))
    for i in R:
        for j, k in ((1, 2), (1, 3), (2, 3)):
            rels.append((f"qm2_{i}{j}{k}", f"{u(j, i)}.{u(k, i)} - q*{u(k, i)}.{u(j, i)}"))
    for i, k in ((1, 2), (1, 3), (2, 3)):
        for m, j in ((1, 2), (1, 3), (2, 3)):
            rels.append((f"qm3_{i}{j}{k}{m}", f"{u(i, j)}.{u(k, m)} - {u(k, m)}.{u(i, j)}"))
    for i, k in ((1, 2), (1, 3), (2, 3)):
        for j, m in ((1, 2), (1, 3), (2, 3)):
            rels.append((f"qm4_{i}{j}{k}{m}",
                         f"{u(i, j)}.{u(k, m)} - {u(k, m)}.{u(i, j)} - (q - q^-1)*{u(i, m)}.{u(k, j)}"))
    return rels


def det_rels():
    rels = []
    for js in product(R, repeat=3):
        terms = []
        for p in permutations(R):
            n = inversions(p)
            c = qpow(n, -1 if n % 2 else 1)
            terms.append(term(c, ".".join(u(js[r], p[r]) for r in range(3))))
        rhs = ""
        if len(set(js)) == 3:
            # subtract E_js = (-q)^n
            n = inversions(js)
            rhs = (" + " if n % 2 else " - ") + qpow(n)
        rels.append((f"det_{''.join(map(str, js))}", join(terms) + rhs))
    return rels


def unitarity_rels():
    rels = []
    for i in R:
        for j in R:
            s = join([f"{u(i, k)}.star({u(j, k)})" for k in R]) + (" - 1" if i == j else "")
            rels.append((f"unit_r_{i}{j}", s))
    for i in R:
        for j in R:
            s = join([f"star({u(k, i)}).{u(k, j)}" for k in R]) + (" - 1" if i == j else "")
            rels.append((f"unit_c_{i}{j}", s))
    return rels


COLDEG = {1: "(1,0)", 2: "(0,1)", 3: "(-1,-1)"}


def matrix_presentation(name, rels, stars):
    out = [f"presentation {name}", "  order pbw"]
    for i in R:
        for j in R:
            out.append(f"  gen {u(i, j)} : {COLDEG[j]}")
    if stars:
        for i in R:
            for j in R:
                out.append(f"  star {u(i, j)} -> {su3_star(i, j)}")
    for label, r in rels:
        out.append(f"  rel {label}: {r}")
    out.append("end")
    return out


def main():
    out = ["# Shipped presentations, maps, Hopf structures and Haar functionals.",
           "# Generated by gen_standard.py.", ""]
    out += matrix_presentation("SU3", qmatrix_rels() + det_rels() + unitarity_rels(), True)
    out += [""]
    out += """presentation U2
  order weighted
  gen u : (1,0)
  gen u* : (-1,0)
  gen alpha : (0,1) weight 2
  gen alpha* : (0,-1) weight 2
  gen gamma : (0,1)
  gen gamma* : (0,-1)
  star u -> u*
  star u* -> u
  star alpha -> alpha*
  star alpha* -> alpha
  star gamma -> gamma*
  star gamma* -> gamma
  rel unit1: u.u* - 1
  rel unit2: u*.u - 1
  rel cent_alpha: alpha.u - u.alpha
  rel cent_gamma: gamma.u - u.gamma
  rel cent_gammas: gamma*.u - u.gamma*
  rel cent_alphas: alpha*.u - u.alpha*
  rel centd_alpha: alpha.u* - u*.alpha
  rel centd_gamma: gamma.u* - u*.gamma
  rel centd_gammas: gamma*.u* - u*.gamma*
  rel centd_alphas: alpha*.u* - u*.alpha*
  rel su21a: alpha.gamma - q*gamma.alpha
  rel su21b: gamma.gamma* - gamma*.gamma
  rel su22a: alpha.gamma* - q*gamma*.alpha
  rel su22b: alpha*.alpha + gamma.gamma* - 1
  rel su22c: alpha.alpha* + q^2*gamma.gamma* - 1
  rel su21a_star: gamma*.alpha* - q*alpha*.gamma*
  rel su22a_star: gamma.alpha* - q*alpha*.gamma
end

presentation SU2
  order weighted
  gen alpha : (0,1) weight 2
  gen alpha* : (0,-1) weight 2
  gen gamma : (0,1)
  gen gamma* : (0,-1)
  star alpha -> alpha*
  star alpha* -> alpha
  star gamma -> gamma*
  star gamma* -> gamma
  rel su21a: alpha.gamma - q*gamma.alpha
  rel su21b: gamma.gamma* - gamma*.gamma
  rel su22a: alpha.gamma* - q*gamma*.alpha
  rel su22b: alpha*.alpha + gamma.gamma* - 1
  rel su22c: alpha.alpha* + q^2*gamma.gamma* - 1
  rel su21a_star: gamma*.alpha* - q*alpha*.gamma*
  rel su22a_star: gamma.alpha* - q*alpha*.gamma
end

presentation T2
  order deglex
  gen U1 : (1,0)
  gen U1* : (-1,0)
  gen U2 : (0,1)
  gen U2* : (0,-1)
  star U1 -> U1*
  star U1* -> U1
  star U2 -> U2*
  star U2* -> U2
  rel unit1: U1.U1* - 1
  rel unit1b: U1*.U1 - 1
  rel unit2: U2.U2* - 1
  rel unit2b: U2*.U2 - 1
  rel comm1: U2.U1 - U1.U2
  rel comm2: U2.U1* - U1*.U2
  rel comm3: U2*.U1 - U1.U2*
  rel comm4: U2*.U1* - U1*.U2*
end

presentation T1
  order deglex
  gen u : (1,0)
  gen u* : (-1,0)
  star u -> u*
  star u* -> u
  rel unit1: u.u* - 1
  rel unit2: u*.u - 1
end
""".splitlines()
    out += [""]
    out += matrix_presentation("Mq3", qmatrix_rels(), False)
    out += [""]

    pi = {(1, 1): "u", (2, 2): "alpha", (2, 3): "-q*gamma*.u*", (3, 2): "gamma", (3, 3): "alpha*.u*"}
    out.append("map pi : SU3 -> U2 hom")
    for i in R:
        for j in R:
            out.append(f"  {u(i, j)} -> {pi.get((i, j), '0')}")
    out.append("end")
    out.append("")
    ph0 = {(1, 1): "U1", (2, 2): "U2", (3, 3): "U1*.U2*"}
    out.append("map pihat0 : SU3 -> T2 hom")
    for i in R:
        for j in R:
            out.append(f"  {u(i, j)} -> {ph0.get((i, j), '0')}")
    out.append("end")
    out += """
map pihat1 : U2 -> T2 hom
  u -> U1
  u* -> U1*
  alpha -> U2
  gamma -> 0
  gamma* -> 0
  alpha* -> U2*
end

map p : U2 -> SU2 hom
  u -> 1
  u* -> 1
  alpha -> alpha
  gamma -> gamma
  gamma* -> gamma*
  alpha* -> alpha*
end

map iota : T1 -> U2 hom
  u -> u
  u* -> u*
end
""".splitlines()

    out.append("hopf SU3")
    for i in R:
        for j in R:
            out.append(f"  coproduct {u(i, j)} -> " + " + ".join(f"{u(i, k)} (x) {u(k, j)}" for k in R))
    for i in R:
        for j in R:
            out.append(f"  counit {u(i, j)} -> {1 if i == j else 0}")
    for i in R:
        for j in R:
            out.append(f"  antipode {u(i, j)} -> star({u(j, i)})")
    out.append("end")
    out.append("")
    # M_q(3) is a bialgebra: no antipode
    out.append("hopf Mq3")
    for i in R:
        for j in R:
            out.append(f"  coproduct {u(i, j)} -> " + " + ".join(f"{u(i, k)} (x) {u(k, j)}" for k in R))
    for i in R:
        for j in R:
            out.append(f"  counit {u(i, j)} -> {1 if i == j else 0}")
    out.append("end")
    out += """
hopf U2
  coproduct u -> u (x) u
  coproduct u* -> u* (x) u*
  coproduct alpha -> alpha (x) alpha - q*gamma*.u* (x) gamma
  coproduct gamma -> gamma (x) alpha + alpha*.u* (x) gamma
  coproduct gamma* -> gamma* (x) alpha* + u.alpha (x) gamma*
  coproduct alpha* -> alpha* (x) alpha* - q*u.gamma (x) gamma*
  counit u -> 1
  counit u* -> 1
  counit alpha -> 1
  counit gamma -> 0
  counit gamma* -> 0
  counit alpha* -> 1
  antipode u -> u*
  antipode u* -> u
  antipode alpha -> alpha*
  antipode gamma -> -q*u.gamma
  antipode gamma* -> -q^-1*u*.gamma*
  antipode alpha* -> alpha
end

hopf SU2
  coproduct alpha -> alpha (x) alpha - q*gamma* (x) gamma
  coproduct gamma -> gamma (x) alpha + alpha* (x) gamma
  coproduct gamma* -> gamma* (x) alpha* + alpha (x) gamma*
  coproduct alpha* -> alpha* (x) alpha* - q*gamma (x) gamma*
  counit alpha -> 1
  counit gamma -> 0
  counit gamma* -> 0
  counit alpha* -> 1
  antipode alpha -> alpha*
  antipode gamma -> -q*gamma
  antipode gamma* -> -q^-1*gamma*
  antipode alpha* -> alpha
end

hopf T2
  coproduct U1 -> U1 (x) U1
  coproduct U1* -> U1* (x) U1*
  coproduct U2 -> U2 (x) U2
  coproduct U2* -> U2* (x) U2*
  counit U1 -> 1
  counit U1* -> 1
  counit U2 -> 1
  counit U2* -> 1
  antipode U1 -> U1*
  antipode U1* -> U1
  antipode U2 -> U2*
  antipode U2* -> U2
end

hopf T1
  coproduct u -> u (x) u
  coproduct u* -> u* (x) u*
  counit u -> 1
  counit u* -> 1
  antipode u -> u*
  antipode u* -> u
end

haar U2
  family gamma.gamma* -> (q^2-1)/(q^(2n+2)-1)
end

haar SU2
  family gamma.gamma* -> (q^2-1)/(q^(2n+2)-1)
end

haar T2
end

haar T1
end
""".splitlines()
    with open("standard.qh", "w") as f:
        f.write("\n".join(out).rstrip() + "\n")


main()
