"""Ball arithmetic and certified evaluation of zeta/Gamma expressions."""
