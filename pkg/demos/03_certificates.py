"""Plan a certificate, inspect it, replay it independently, round-trip JSON.

Run:  python demos/03_certificates.py
"""

from collections import Counter

from sixforms import FormSystem, analyze, certificate_from_json, certificate_to_json, plan, replay

sys_ = FormSystem(101, ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (2, 3, 5), (7, 11, 13)))
report = analyze(sys_)
print("true complexity one:", report.true_complexity_is_one)
print("partition complexity at each index:",
      {j: s for j, (s, _) in report.cs_by_index.items()})

stats = {}
cert = plan(sys_, "1", stats)
kinds = Counter(type(s).__name__ for s in cert.steps)
print(f"\nplanned {len(cert.steps)} steps: {dict(kinds)}")
print(f"word length {stats['word_length']}, blocks used {stats['blocks_used']}")
print(f"exponent: 2^-{cert.exponent_log2_denominator}")

final = replay(cert)
print("\nindependent replay passed; final forms:")
for lbl in final.labels:
    print(f"  {lbl}: {final.maps[lbl].row(0)}")

text = certificate_to_json(cert)
assert certificate_to_json(certificate_from_json(text)) == text
print(f"\nserialized certificate: {len(text)} bytes, bit-exact round trip")
