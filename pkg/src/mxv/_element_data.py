"""Embedded element table, Z = 1..103.

Covalent radii are the Cordero 2008 single-bond values (low-spin variant
for Mn/Fe/Co); actinides past Cm, which that compilation does not cover,
fall back to 1.5 A. Display radii are a ball-and-stick sphere size
(0.3 x van der Waals). Colors are the Jmol scheme, RGB in [0, 1].
"""

# Z: (symbol, covalent_radius_ang, display_radius_ang, (r, g, b))
ELEMENT_TABLE = {
    1: ("H", 0.31, 0.33, (1.000, 1.000, 1.000)),
    2: ("He", 0.28, 0.42, (0.851, 1.000, 1.000)),
    3: ("Li", 1.28, 0.543, (0.800, 0.502, 1.000)),
    4: ("Be", 0.96, 0.459, (0.761, 1.000, 0.000)),
    5: ("B", 0.84, 0.576, (1.000, 0.710, 0.710)),
    6: ("C", 0.76, 0.51, (0.565, 0.565, 0.565)),
    7: ("N", 0.71, 0.465, (0.188, 0.314, 0.973)),
    8: ("O", 0.66, 0.456, (1.000, 0.051, 0.051)),
    9: ("F", 0.57, 0.441, (0.565, 0.878, 0.314)),
    10: ("Ne", 0.58, 0.462, (0.702, 0.890, 0.961)),
    11: ("Na", 1.66, 0.681, (0.671, 0.361, 0.949)),
    12: ("Mg", 1.41, 0.519, (0.541, 1.000, 0.000)),
    13: ("Al", 1.21, 0.552, (0.749, 0.651, 0.651)),
    14: ("Si", 1.11, 0.63, (0.941, 0.784, 0.627)),
    15: ("P", 1.07, 0.54, (1.000, 0.502, 0.000)),
    16: ("S", 1.05, 0.54, (1.000, 1.000, 0.188)),
    17: ("Cl", 1.02, 0.525, (0.122, 0.941, 0.122)),
    18: ("Ar", 1.06, 0.564, (0.502, 0.820, 0.890)),
    19: ("K", 2.03, 0.825, (0.561, 0.251, 0.831)),
    20: ("Ca", 1.76, 0.693, (0.239, 1.000, 0.000)),
    21: ("Sc", 1.7, 0.69, (0.902, 0.902, 0.902)),
    22: ("Ti", 1.6, 0.645, (0.749, 0.761, 0.780)),
    23: ("V", 1.53, 0.615, (0.651, 0.651, 0.671)),
    24: ("Cr", 1.39, 0.615, (0.541, 0.600, 0.780)),
    25: ("Mn", 1.39, 0.615, (0.612, 0.478, 0.780)),
    26: ("Fe", 1.32, 0.615, (0.878, 0.400, 0.200)),
    27: ("Co", 1.26, 0.6, (0.941, 0.565, 0.627)),
    28: ("Ni", 1.24, 0.6, (0.314, 0.816, 0.314)),
    29: ("Cu", 1.32, 0.6, (0.784, 0.502, 0.200)),
    30: ("Zn", 1.22, 0.63, (0.490, 0.502, 0.690)),
    31: ("Ga", 1.22, 0.561, (0.761, 0.561, 0.561)),
    32: ("Ge", 1.2, 0.633, (0.400, 0.561, 0.561)),
    33: ("As", 1.19, 0.555, (0.741, 0.502, 0.890)),
    34: ("Se", 1.2, 0.57, (1.000, 0.631, 0.000)),
    35: ("Br", 1.2, 0.549, (0.651, 0.161, 0.161)),
    36: ("Kr", 1.16, 0.606, (0.361, 0.722, 0.820)),
    37: ("Rb", 2.2, 0.909, (0.439, 0.180, 0.690)),
    38: ("Sr", 1.95, 0.747, (0.000, 1.000, 0.000)),
    39: ("Y", 1.9, 0.72, (0.580, 1.000, 1.000)),
    40: ("Zr", 1.75, 0.69, (0.580, 0.878, 0.878)),
    41: ("Nb", 1.64, 0.645, (0.451, 0.761, 0.788)),
    42: ("Mo", 1.54, 0.63, (0.329, 0.710, 0.710)),
    43: ("Tc", 1.47, 0.615, (0.231, 0.620, 0.620)),
    44: ("Ru", 1.46, 0.615, (0.141, 0.561, 0.561)),
    45: ("Rh", 1.42, 0.6, (0.039, 0.490, 0.549)),
    46: ("Pd", 1.39, 0.615, (0.000, 0.412, 0.522)),
    47: ("Ag", 1.45, 0.63, (0.753, 0.753, 0.753)),
    48: ("Cd", 1.44, 0.66, (1.000, 0.851, 0.561)),
    49: ("In", 1.42, 0.66, (0.651, 0.459, 0.451)),
    50: ("Sn", 1.39, 0.579, (0.400, 0.502, 0.502)),
    51: ("Sb", 1.39, 0.651, (0.620, 0.388, 0.710)),
    52: ("Te", 1.38, 0.618, (0.831, 0.478, 0.000)),
    53: ("I", 1.39, 0.594, (0.580, 0.000, 0.580)),
    54: ("Xe", 1.4, 0.648, (0.259, 0.620, 0.690)),
    55: ("Cs", 2.44, 1.029, (0.341, 0.090, 0.561)),
    56: ("Ba", 2.15, 0.804, (0.000, 0.788, 0.000)),
    57: ("La", 2.07, 0.75, (0.439, 0.831, 1.000)),
    58: ("Ce", 2.04, 0.744, (1.000, 1.000, 0.780)),
    59: ("Pr", 2.03, 0.741, (0.851, 1.000, 0.780)),
    60: ("Nd", 2.01, 0.735, (0.780, 1.000, 0.780)),
    61: ("Pm", 1.99, 0.729, (0.639, 1.000, 0.780)),
    62: ("Sm", 1.98, 0.726, (0.561, 1.000, 0.780)),
    63: ("Eu", 1.98, 0.72, (0.380, 1.000, 0.780)),
    64: ("Gd", 1.96, 0.714, (0.271, 1.000, 0.780)),
    65: ("Tb", 1.94, 0.711, (0.188, 1.000, 0.780)),
    66: ("Dy", 1.92, 0.705, (0.122, 1.000, 0.780)),
    67: ("Ho", 1.92, 0.699, (0.000, 1.000, 0.612)),
    68: ("Er", 1.89, 0.696, (0.000, 0.902, 0.459)),
    69: ("Tm", 1.9, 0.69, (0.000, 0.831, 0.322)),
    70: ("Yb", 1.87, 0.684, (0.000, 0.749, 0.220)),
    71: ("Lu", 1.87, 0.681, (0.000, 0.671, 0.141)),
    72: ("Hf", 1.75, 0.675, (0.302, 0.761, 1.000)),
    73: ("Ta", 1.7, 0.66, (0.302, 0.651, 1.000)),
    74: ("W", 1.62, 0.63, (0.129, 0.580, 0.839)),
    75: ("Re", 1.51, 0.615, (0.149, 0.490, 0.671)),
    76: ("Os", 1.44, 0.6, (0.149, 0.400, 0.588)),
    77: ("Ir", 1.41, 0.6, (0.090, 0.329, 0.529)),
    78: ("Pt", 1.36, 0.615, (0.816, 0.816, 0.878)),
    79: ("Au", 1.36, 0.63, (1.000, 0.820, 0.137)),
    80: ("Hg", 1.32, 0.615, (0.722, 0.722, 0.816)),
    81: ("Tl", 1.45, 0.588, (0.651, 0.329, 0.302)),
    82: ("Pb", 1.46, 0.606, (0.341, 0.349, 0.380)),
    83: ("Bi", 1.48, 0.621, (0.620, 0.310, 0.710)),
    84: ("Po", 1.4, 0.591, (0.671, 0.361, 0.000)),
    85: ("At", 1.5, 0.606, (0.459, 0.310, 0.271)),
    86: ("Rn", 1.5, 0.66, (0.259, 0.510, 0.588)),
    87: ("Fr", 2.6, 1.044, (0.259, 0.000, 0.400)),
    88: ("Ra", 2.21, 0.849, (0.000, 0.490, 0.000)),
    89: ("Ac", 2.15, 0.6, (0.439, 0.671, 0.980)),
    90: ("Th", 2.06, 0.72, (0.000, 0.729, 1.000)),
    91: ("Pa", 2.0, 0.6, (0.000, 0.631, 1.000)),
    92: ("U", 1.96, 0.69, (0.000, 0.561, 1.000)),
    93: ("Np", 1.9, 0.6, (0.000, 0.502, 1.000)),
    94: ("Pu", 1.87, 0.6, (0.000, 0.420, 1.000)),
    95: ("Am", 1.8, 0.6, (0.329, 0.361, 0.949)),
    96: ("Cm", 1.69, 0.6, (0.471, 0.361, 0.890)),
    97: ("Bk", 1.5, 0.6, (0.541, 0.310, 0.890)),
    98: ("Cf", 1.5, 0.6, (0.631, 0.212, 0.831)),
    99: ("Es", 1.5, 0.6, (0.702, 0.122, 0.831)),
    100: ("Fm", 1.5, 0.6, (0.702, 0.122, 0.729)),
    101: ("Md", 1.5, 0.6, (0.702, 0.051, 0.651)),
    102: ("No", 1.5, 0.6, (0.741, 0.051, 0.529)),
    103: ("Lr", 1.5, 0.6, (0.780, 0.000, 0.400)),
}
