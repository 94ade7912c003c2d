"""Extended-precision reference values frozen into the C++ unit tests.

Every quantity here is evaluated from its defining closed form or by a
brute-force procedure (bisection, dense scan, finite differences) at 50
digits with mpmath. Nothing here imports or mirrors the C++ code paths.
"""
import mpmath as mp

mp.mp.dps = 50


def logmgf(p, t):
    return mp.log(p * mp.e ** (t * (1 - p)) + (1 - p) * mp.e ** (-t * p))


def logmgf_pair(p1, p2, t):
    atoms = [(-p1 - p2, (1 - p1) * (1 - p2)),
             (1 - p1 - p2, p1 + p2 - 2 * p1 * p2),
             (2 - p1 - p2, p1 * p2)]
    return mp.log(sum(w * mp.e ** (t * x) for x, w in atoms))


def f_pair(p1, p2, t):
    g = lambda s: logmgf_pair(p1, p2, s) / s ** 2
    return t ** 3 * mp.diff(g, t)


def disc_D(p1, p2):
    return 12 * p1 * p2 * (p1 * p2 + p1 + p2) - 14 * p1 * p2 + p1 ** 2 + p2 ** 2


def h(p1, p2):
    return mp.log((1 - p1) / p1 * (1 - p2) / p2) - 2 * (1 - p1 - p2) / (p1 * (1 - p1) + p2 * (1 - p2))


def show(name, v):
    print(f"{name:40s} {mp.nstr(v, 17)}")


mp_s = mp.mpf
show("logmgf(0.25, 2ln3)", logmgf(mp_s('0.25'), 2 * mp.log(3)))
show("g(0.25, t->0) limit", mp.limit(lambda t: logmgf(mp_s('0.25'), t) / t ** 2, 0))
show("ks(0.25)", (1 - 2 * mp_s('0.25')) / (4 * mp.log(3)))
show("ks(0.5 +- 1e-8)", (1 - 2 * (mp_s('0.5') + mp_s('1e-8'))) / (4 * mp.log((1 - mp_s('0.5') - mp_s('1e-8')) / (mp_s('0.5') + mp_s('1e-8')))))
show("r_frak(0.25)", -mp_s('0.5') + mp_s('0.375') * mp.log(3))
show("t_star_scalar(0.25)", 2 * mp.log(3))
show("g_pair((0.4,0.2), ln6)", logmgf_pair(mp_s('0.4'), mp_s('0.2'), mp.log(6)) / mp.log(6) ** 2)
show("ks_pair(0.4,0.2)", mp_s('0.4') / mp.log(6))
show("ks_pair(0.6,0.4+1e-8)", (1 - mp_s('0.6') - mp_s('0.4') - mp_s('1e-8')) / mp.log(mp_s('0.4') / mp_s('0.6') * (mp_s('0.6') - mp_s('1e-8')) / (mp_s('0.4') + mp_s('1e-8'))))
show("f'''_pair((0.4,0.2),0) by FD", mp.diff(lambda t: f_pair(mp_s('0.4'), mp_s('0.2'), t), mp_s('1e-20'), 3))
show("f''_pair((0.4,0.2), ln6/2)", mp.diff(lambda t: f_pair(mp_s('0.4'), mp_s('0.2'), t), mp.log(6) / 2, 2))

# d_roots at 0.3 and 0.45 by bisection on disc_D in p2
def bisect(fn, a, b):
    fa = fn(a)
    for _ in range(200):
        m = (a + b) / 2
        if (fn(m) > 0) == (fa > 0):
            a, fa = m, fn(m)
        else:
            b = m
    return (a + b) / 2

show("d_lower(0.3)", bisect(lambda x: disc_D(mp_s('0.3'), x), mp_s('0.001'), mp_s('0.2')))
show("d_lower(0.45)", bisect(lambda x: disc_D(mp_s('0.45'), x), mp_s('0.001'), mp_s('0.2')))
show("d_upper(0.45)", bisect(lambda x: disc_D(mp_s('0.45'), x), mp_s('0.2'), mp_s('0.45')))
show("disc_D(0.45,0.05)", disc_D(mp_s('0.45'), mp_s('0.05')))
show("disc_D(0.4,0.2)", disc_D(mp_s('0.4'), mp_s('0.2')))
show("disc_D(0.3,0.1)", disc_D(mp_s('0.3'), mp_s('0.1')))

# roots of the f'' polynomial by bisection on f'' itself (no quadratic formula)
def fpp(t):
    return mp.diff(lambda s: f_pair(mp_s('0.45'), mp_s('0.05'), s), t, 2)
show("t_minus(0.45,0.05)", bisect(fpp, mp_s('0.8'), mp_s('1.3')))
show("t_plus(0.45,0.05)", bisect(fpp, mp_s('1.8'), mp_s('2.4')))
show("t_star(0.45,0.05)", mp.log(mp_s('0.55') / mp_s('0.45') * mp_s('0.95') / mp_s('0.05')))

# beta
tau = mp_s(2)
j = 1 / tau - 1 / (mp.e ** tau - 1)
jp = -1 / tau ** 2 + mp.e ** tau / (mp.e ** tau - 1) ** 2
u, v = j + mp.sqrt(-jp), j - mp.sqrt(-jp)
show("b(2).u", u)
show("b(2).v", v)
show("h(b(2))", h(u, v))
show("beta(0.6) by bisection", bisect(lambda x: h(mp_s('0.6'), x), mp_s('1e-6'), mp_s('0.3')))
show("alpha(0.6)", (1 + 2 * mp_s('0.6') - mp.sqrt(1 + 12 * mp_s('0.6') * mp_s('0.4'))) / 4)
show("h(0.3,0.3)", h(mp_s('0.3'), mp_s('0.3')))
show("p_t(2)", 1 / (1 + mp.e))

# t_dagger for anti-diagonal 0.85 by bisection on f
fd = lambda t: f_pair(mp_s('0.85'), mp_s('0.15'), t)
show("t_dagger(0.85)", bisect(fd, mp_s('0.5'), mp_s('20')))

# mode of the scalar g at 0.3 by dense scan + golden refinement of g itself
g = lambda t: logmgf(mp_s('0.3'), t) / t ** 2
show("argmax g_0.3 (findroot g')", mp.findroot(lambda t: mp.diff(g, t), 1.7))
show("2log(0.7/0.3)", 2 * mp.log(mp_s('0.7') / mp_s('0.3')))

# beta parametrisation deep in the tail, from the defining j(tau), j'(tau)
tau = mp.mpf(10)
j = 1 / tau - 1 / mp.expm1(tau)
r = mp.sqrt(-mp.diff(lambda s: 1 / s - 1 / mp.expm1(s), tau))
show("b(10).u", j + r)
show("b(10).v", j - r)

# gamma: double zero of t -> f_{p1,p2}(t), Newton on (p2, t) from a coarse start
mp.mp.dps = 30
for p1, start in (("0.05", (1.8e-4, 7.0)), ("0.4", (0.0277, 2.45)), ("0.6", (0.086, 1.22))):
    a = mp_s(p1)
    F = lambda p2, t: f_pair(a, p2, t)
    Fp = lambda p2, t: mp.diff(lambda s: f_pair(a, p2, s), t)
    p2, t = mp.findroot([F, Fp], start)
    show(f"gamma({p1})", p2)
    show(f"t_hat({p1})", t)

mp.mp.dps = 50
for tau in ("0.5", "1e-3"):
    x = mp_s(tau)
    show(f"j({tau})", 1 / x - 1 / mp.expm1(x))
    show(f"-j'({tau})", 1 / x ** 2 - 1 / (4 * mp.sinh(x / 2) ** 2))

# g_p'(t) inside the series seam
for p in ("0.05", "0.3", "0.5", "0.77"):
    for t in ("-9e-3", "-1e-3", "1e-3", "9e-3"):
        a, x = mp_s(p), mp_s(t)
        show(f"g'({p}, {t})", mp.diff(lambda s: logmgf(a, s) / s ** 2, x))
