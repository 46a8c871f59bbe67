"""Batch verification with reproducible reports.

Run:  python demos/04_verification_reports.py
"""

from magforms.verify import verify_congruence, verify_table1, verify_theorem

print(verify_theorem("th1", 600).render_text())
print()
print(verify_theorem("w6", 400).render_text())
print()
print(verify_table1(rows=[1, 2, 11], lift_coeffs=40, magnetic_prec=300).render_text())
print()
print(verify_congruence("F6", 5, 1, 2, 600).render_text())
print()
print(verify_congruence("f4a", 3, 2, 1, 150).render_text())
print()
print("JSON form of a report (timing lives in its own block):")
print(verify_congruence("F4a", 7, 1, 1, 400).to_json())
