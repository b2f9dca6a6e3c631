from .laurent import LaurentPoly, RationalFunction, poly_text, parse_poly, parse_value
