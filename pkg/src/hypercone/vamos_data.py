"""Exact data of the specialized Vamos example.

``G_VECTOR`` is derived, not printed with the rest: it is the constant
vector with ``A(x) f = h4 * g``, recovered once by exact division and
frozen here.
"""

E_POINT = (1, 1, 0, 0)

# h4 = x1^2 x2^2 + 4 (x1+x2+x3+x4)(x1x2x3 + x1x2x4 + x1x3x4 + x2x3x4)
H4_SQUARE_TERM = (1, (2, 2, 0, 0))
H4_FACTOR_SUM = (1, 1, 1, 1)
H4_FACTOR_E3 = ((1, 1, 1, 0), (1, 1, 0, 1), (1, 0, 1, 1), (0, 1, 1, 1))

# entries of f as (coefficient, exponent) lists, kept as displayed
# (unsimplified; repeated monomials are summed on construction)
F_ENTRIES = (
    ((1, (2, 1, 0, 0)),),
    ((1, (1, 2, 0, 0)),),
    ((1, (1, 1, 1, 0)),),
    ((1, (1, 1, 0, 1)),),
    ((1, (0, 0, 2, 1)), (1, (0, 0, 1, 2)), (1, (1, 0, 1, 1)), (1, (0, 1, 1, 1)),),
    ((1, (0, 2, 0, 1)), (1, (0, 1, 0, 2)), (1, (0, 1, 1, 1)),),
    ((1, (2, 0, 0, 1)), (1, (1, 0, 0, 2)), (-1, (0, 1, 1, 1)), (1, (1, 0, 1, 1)), (1, (0, 1, 1, 1)),),
    ((1, (0, 2, 1, 0)), (1, (0, 1, 2, 0)), (1, (0, 1, 1, 1)),),
    ((1, (1, 0, 1, 1)), (1, (0, 1, 1, 1)), (1, (2, 0, 1, 0)), (1, (1, 0, 2, 0)), (-1, (0, 1, 1, 1)),),
)

PENCIL = (
    (
        ( 0,  0,  0,  0,  0,  0,  0,  0,  0),
        ( 0,  2,  4,  4,  2,  3,  0,  3,  0),
        ( 0,  4, 15, 10,  4,  9,  0, 12,  0),
        ( 0,  4, 10, 15,  4, 12,  0,  7,  0),
        ( 0,  2,  4,  4,  8,  4,  0,  4,  0),
        ( 0,  3,  9, 12,  4, 12,  0,  8,  0),
        ( 0,  0,  0,  0,  0,  0,  0,  0,  0),
        ( 0,  3, 12,  7,  4,  8,  0, 12,  0),
        ( 0,  0,  0,  0,  0,  0,  0,  0,  0),
    ),
    (
        ( 2,  0,  4,  4,  0,  0,  3,  0,  3),
        ( 0,  0,  0,  0,  0,  0,  0,  0,  0),
        ( 4,  0, 15, 12,  4,  0,  9,  0, 12),
        ( 4,  0, 12, 15,  4,  0, 12,  0,  9),
        ( 0,  0,  4,  4,  8,  0,  4,  0,  4),
        ( 0,  0,  0,  0,  0,  0,  0,  0,  0),
        ( 3,  0,  9, 12,  4,  0, 12,  0,  8),
        ( 0,  0,  0,  0,  0,  0,  0,  0,  0),
        ( 3,  0, 12,  9,  4,  0,  8,  0, 12),
    ),
    (
        ( 5,  4,  5, 13,  0,  3,  4,  0,  0),
        ( 4,  5,  5, 13,  0,  4,  3,  0,  0),
        ( 5,  5,  8, 16,  0,  4,  4,  0,  0),
        (13, 13, 16, 66,  0, 24, 24,  0,  0),
        ( 0,  0,  0,  0,  0,  0,  0,  0,  0),
        ( 3,  4,  4, 24,  0, 12,  8,  0,  0),
        ( 4,  3,  4, 24,  0,  8, 12,  0,  0),
        ( 0,  0,  0,  0,  0,  0,  0,  0,  0),
        ( 0,  0,  0,  0,  0,  0,  0,  0,  0),
    ),
    (
        ( 5,  4, 13,  5,  0,  0,  0,  5,  4),
        ( 4,  5, 11,  5,  0,  0,  0,  4,  3),
        (13, 11, 62, 14,  0,  0,  0, 24, 24),
        ( 5,  5, 14,  8,  0,  0,  0,  4,  4),
        ( 0,  0,  0,  0,  0,  0,  0,  0,  0),
        ( 0,  0,  0,  0,  0,  0,  0,  0,  0),
        ( 0,  0,  0,  0,  0,  0,  0,  0,  0),
        ( 5,  4, 24,  4,  0,  0,  0, 12,  8),
        ( 4,  3, 24,  4,  0,  0,  0,  8, 12),
    ),
)

# det(x1 A1 + ... + x4 A4) = DET_SCALAR * q * h4
DET_SCALAR = 8

# degree-5 cofactor, 52 nonzero coefficients out of 56 monomials
Q_TERMS = (
    (13684, (4, 1, 0, 0)),
    (44736, (3, 2, 0, 0)),
    (43092, (2, 3, 0, 0)),
    (12672, (1, 4, 0, 0)),
    (20526, (4, 0, 1, 0)),
    (137404, (3, 1, 1, 0)),
    (234086, (2, 2, 1, 0)),
    (130140, (1, 3, 1, 0)),
    (19008, (0, 4, 1, 0)),
    (81141, (3, 0, 2, 0)),
    (298281, (2, 1, 2, 0)),
    (294753, (1, 2, 2, 0)),
    (78381, (0, 3, 2, 0)),
    (95004, (2, 0, 3, 0)),
    (202680, (1, 1, 3, 0)),
    (97308, (0, 2, 3, 0)),
    (34560, (1, 0, 4, 0)),
    (34560, (0, 1, 4, 0)),
    (20526, (4, 0, 0, 1)),
    (143132, (3, 1, 0, 1)),
    (245302, (2, 2, 0, 1)),
    (136668, (1, 3, 0, 1)),
    (19008, (0, 4, 0, 1)),
    (177646, (3, 0, 1, 1)),
    (653482, (2, 1, 1, 1)),
    (644798, (1, 2, 1, 1)),
    (170010, (0, 3, 1, 1)),
    (335962, (2, 0, 2, 1)),
    (716864, (1, 1, 2, 1)),
    (339546, (0, 2, 2, 1)),
    (197328, (1, 0, 3, 1)),
    (198864, (0, 1, 3, 1)),
    (23040, (0, 0, 4, 1)),
    (89733, (3, 0, 0, 2)),
    (328001, (2, 1, 0, 2)),
    (326473, (1, 2, 0, 2)),
    (88173, (0, 3, 0, 2)),
    (347858, (2, 0, 1, 2)),
    (740512, (1, 1, 1, 2)),
    (353442, (0, 2, 1, 2)),
    (335416, (1, 0, 2, 2)),
    (339032, (0, 1, 2, 2)),
    (74736, (0, 0, 3, 2)),
    (105780, (2, 0, 0, 3)),
    (222664, (1, 1, 0, 3)),
    (109284, (0, 2, 0, 3)),
    (206192, (1, 0, 1, 3)),
    (208528, (0, 1, 1, 3)),
    (77088, (0, 0, 2, 3)),
    (37320, (1, 0, 0, 4)),
    (37320, (0, 1, 0, 4)),
    (24880, (0, 0, 1, 4)),
)

# generators of the polyhedral cone P
P_GENERATORS = (
    (-1, 1, 1, 1),
    (0, 0, 0, 1),
    (0, 0, 1, 0),
    (0, 1, 0, 0),
    (97158, 349054, -97158, 48579),
    (1254295, 2286243, -1254295, 902667),
    (34467702748869, 51220867444589, -18850428895115, 5520895984119),
    (1, -1, 1, 1),
    (1, 1, 1, -1),
    (76, 76, -76, 73),
    (32149601920763, 39439133903061, -22184781006392, 12291366169158),
    (1478583187, 1478583187, -505711185, 9637592),
    (473101680550746783, 382880146087171841, -281753287537197912, 164863532879193083),
    (22235654601, 14731327813, -14731327813, 11162908487),
    (18796049082090475406192769, 12642631651257529231647001, -7218443413613218522402055, 2253174647395531583889791),
    (85691768955272442, 22716939987422258, -22716939987422258, 11358469993711129),
    (1, 0, 0, 0),
)

EIGEN_MARGIN = (1, 2)  # lambda_min(A1 + A2) > 1/2

# A(x) f = h4 * G_VECTOR (exact quotient of the bundled pencil applied to f)
G_VECTOR = (2, 2, 8, 8, 2, 3, 3, 3, 3)
