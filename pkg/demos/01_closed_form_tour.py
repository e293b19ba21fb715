"""Tour of the closed-form solution as the parameter bound tightens.

One Bernoulli trial, success probability known to lie in [0, eta].  The
worst-case-optimal estimator reports a* on a negative trial and b* on a
positive one.  Sweeping eta shows the two regimes:

* eta <= 3/4: the bound is binding.  b* = eta (a positive trial reports
  the largest value allowed) and a* = sqrt(1-eta) - (1-eta) balances the
  risk at the two ends of the interval.
* eta > 3/4: the bound is loose.  The classical shrink-to-1/2 rule
  (1/4, 3/4) keeps its constant risk 1/16 and stays optimal.

Run:  python demos/01_closed_form_tour.py
"""

from bernoulli_minimax import ParamSpace, minimax_n1

print(f"{'eta':>5}  {'a* (X=0)':>10}  {'b* (X=1)':>10}  {'worst risk':>11}  branch")
for k in range(0, 21):
    eta = round(0.05 * k, 2)
    sol = minimax_n1(ParamSpace(eta))
    print(
        f"{eta:5.2f}  {sol.a_star:10.6f}  {sol.b_star:10.6f}"
        f"  {sol.value:11.7f}  {sol.branch.value}"
    )

print()
print("Notes:")
print(" - the worst-case risk grows with eta: a wider interval is a harder problem;")
print(" - it saturates at 1/16 = 0.0625 once eta reaches 3/4;")
print(" - at eta = 0.2 a negative trial reports ~9.44%, far above the 0% a")
print("   plug-in rule would claim from a single negative observation.")
