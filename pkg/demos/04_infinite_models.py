# Infinite models, where the full axiom set is satisfiable
# ----------------------------------------------------------
# No finite carrier lets every atom have a strict predecessor (demo 01).
# The prefix model does: atoms are nonempty binary strings, s depends on
# every prefix of s, and appending "0" always moves strictly down.
# Open sets stay computable as finite generator lists.

from magmas import (GenOpen, binary_string_model, clustered_model, gen_equal,
                    gen_intersect, gen_member, gen_subset, members_up_to,
                    strict_shrink, validate_model)

m = binary_string_model()
print("'010' depends on '01'?", m.leq("010", "01"))
print("strict predecessor of '1':", m.strict_pred("1"))

report = validate_model(m, depth=8)
print(f"axioms on {report.atoms_checked} atoms "
      f"+ {report.triples_checked} triples:", "pass" if report.ok else "fail")

# A generated open is a finite union of cones. Membership and inclusion
# are decided on the generators alone.
g = GenOpen(m, 1, ("0", "11"))
print("'110' in pr(0) ∪ pr(11)?", gen_member(g, "110"))
print("pr(01) ⊆ pr(0)?", gen_subset(GenOpen(m, 1, ("01",)), GenOpen(m, 1, ("0",))))
print("pr(0) ∪ pr(00) = pr(0)?",
      gen_equal(GenOpen(m, 1, ("0", "00")), GenOpen(m, 1, ("0",))))

# Cones nest or are disjoint, so meets stay finitely generated.
met = gen_intersect(GenOpen(m, 1, ("0",)), GenOpen(m, 1, ("01",)))
print("pr(0) ∩ pr(01) generators:", met.generators)
print("pr(0) ∩ pr(1):", gen_intersect(GenOpen(m, 1, ("0",)), GenOpen(m, 1, ("1",))))

# No minimal magmas: shrink forever.
cur = GenOpen(m, 1, ("0",))
chain = [cur]
for _ in range(4):
    cur = strict_shrink(cur)
    chain.append(cur)
print("strictly descending chain:",
      " ⊋ ".join("pr(%s)" % ",".join(c.generators) for c in chain))

# Every generated open is infinite; watch the bounded counts climb.
print("members of pr(0)∪pr(11) up to depth d:",
      {d: len(members_up_to(g, d)) for d in (4, 6, 8)})

# Clusters of mutually dependent atoms: membership cannot split a cluster.
c = clustered_model(3)
gc = GenOpen(c, 1, (("01", 0),))
print("cluster votes for '01':", [gen_member(gc, ("01", i)) for i in range(3)])
print("cluster votes for '1': ", [gen_member(gc, ("1", i)) for i in range(3)])
