"""Bordism groups in degrees 0..99 as published, one ``(n, r, t)`` row per degree.

Each table is guarded by a SHA-256 of its canonical text so accidental edits
are caught at import time.
"""

from __future__ import annotations

import hashlib

SPIN = (
    (0, 1, 0),
    (1, 0, 1),
    (2, 0, 1),
    (3, 0, 0),
    (4, 1, 0),
    (5, 0, 0),
    (6, 0, 0),
    (7, 0, 0),
    (8, 2, 0),
    (9, 0, 2),
    (10, 0, 3),
    (11, 0, 0),
    (12, 3, 0),
    (13, 0, 0),
    (14, 0, 0),
    (15, 0, 0),
    (16, 5, 0),
    (17, 0, 5),
    (18, 0, 7),
    (19, 0, 0),
    (20, 7, 1),
    (21, 0, 0),
    (22, 0, 1),
    (23, 0, 0),
    (24, 11, 0),
    (25, 0, 11),
    (26, 0, 15),
    (27, 0, 0),
    (28, 15, 2),
    (29, 0, 1),
    (30, 0, 3),
    (31, 0, 0),
    (32, 22, 1),
    (33, 0, 23),
    (34, 0, 31),
    (35, 0, 0),
    (36, 30, 6),
    (37, 0, 2),
    (38, 0, 7),
    (39, 0, 1),
    (40, 42, 4),
    (41, 0, 45),
    (42, 0, 60),
    (43, 0, 2),
    (44, 56, 14),
    (45, 0, 6),
    (46, 0, 17),
    (47, 0, 4),
    (48, 77, 11),
    (49, 0, 86),
    (50, 0, 114),
    (51, 0, 7),
    (52, 101, 31),
    (53, 0, 15),
    (54, 0, 38),
    (55, 0, 13),
    (56, 135, 29),
    (57, 0, 159),
    (58, 0, 210),
    (59, 0, 22),
    (60, 176, 67),
    (61, 0, 38),
    (62, 0, 80),
    (63, 0, 36),
    (64, 231, 70),
    (65, 0, 290),
    (66, 0, 379),
    (67, 0, 58),
    (68, 297, 142),
    (69, 0, 90),
    (70, 0, 169),
    (71, 0, 92),
    (72, 385, 158),
    (73, 0, 521),
    (74, 0, 676),
    (75, 0, 143),
    (76, 490, 291),
    (77, 0, 205),
    (78, 0, 347),
    (79, 0, 219),
    (80, 627, 343),
    (81, 0, 931),
    (82, 0, 1196),
    (83, 0, 330),
    (84, 792, 589),
    (85, 0, 448),
    (86, 0, 698),
    (87, 0, 494),
    (88, 1002, 721),
    (89, 0, 1658),
    (90, 0, 2103),
    (91, 0, 729),
    (92, 1255, 1171),
    (93, 0, 952),
    (94, 0, 1385),
    (95, 0, 1068),
    (96, 1575, 1472),
    (97, 0, 2948),
    (98, 0, 3689),
    (99, 0, 1550),
)

SPINC = (
    (0, 1, 0),
    (1, 0, 0),
    (2, 1, 0),
    (3, 0, 0),
    (4, 2, 0),
    (5, 0, 0),
    (6, 2, 0),
    (7, 0, 0),
    (8, 4, 0),
    (9, 0, 0),
    (10, 4, 1),
    (11, 0, 0),
    (12, 7, 0),
    (13, 0, 0),
    (14, 7, 1),
    (15, 0, 0),
    (16, 12, 0),
    (17, 0, 0),
    (18, 12, 3),
    (19, 0, 0),
    (20, 19, 1),
    (21, 0, 0),
    (22, 19, 5),
    (23, 0, 0),
    (24, 30, 2),
    (25, 0, 0),
    (26, 30, 9),
    (27, 0, 0),
    (28, 45, 4),
    (29, 0, 1),
    (30, 45, 14),
    (31, 0, 1),
    (32, 67, 8),
    (33, 0, 2),
    (34, 67, 24),
    (35, 0, 2),
    (36, 97, 15),
    (37, 0, 4),
    (38, 97, 37),
    (39, 0, 5),
    (40, 139, 26),
    (41, 0, 8),
    (42, 139, 59),
    (43, 0, 10),
    (44, 195, 44),
    (45, 0, 16),
    (46, 195, 90),
    (47, 0, 20),
    (48, 272, 72),
    (49, 0, 29),
    (50, 272, 138),
    (51, 0, 36),
    (52, 373, 116),
    (53, 0, 51),
    (54, 373, 207),
    (55, 0, 64),
    (56, 508, 183),
    (57, 0, 88),
    (58, 508, 311),
    (59, 0, 110),
    (60, 684, 284),
    (61, 0, 148),
    (62, 684, 458),
    (63, 0, 184),
    (64, 915, 434),
    (65, 0, 243),
    (66, 915, 676),
    (67, 0, 301),
    (68, 1212, 658),
    (69, 0, 391),
    (70, 1212, 987),
    (71, 0, 483),
    (72, 1597, 985),
    (73, 0, 619),
    (74, 1597, 1436),
    (75, 0, 762),
    (76, 2087, 1462),
    (77, 0, 967),
    (78, 2087, 2074),
    (79, 0, 1186),
    (80, 2714, 2152),
    (81, 0, 1490),
    (82, 2714, 2986),
    (83, 0, 1820),
    (84, 3506, 3145),
    (85, 0, 2268),
    (86, 3506, 4273),
    (87, 0, 2762),
    (88, 4508, 4564),
    (89, 0, 3418),
    (90, 4508, 6095),
    (91, 0, 4147),
    (92, 5763, 6583),
    (93, 0, 5099),
    (94, 5763, 8651),
    (95, 0, 6167),
    (96, 7338, 9440),
    (97, 0, 7540),
    (98, 7338, 12237),
    (99, 0, 9090),
)

SPINH = (
    (0, 1, 0),
    (1, 0, 0),
    (2, 0, 0),
    (3, 0, 0),
    (4, 2, 0),
    (5, 0, 2),
    (6, 0, 2),
    (7, 0, 0),
    (8, 4, 0),
    (9, 0, 1),
    (10, 0, 1),
    (11, 0, 0),
    (12, 7, 0),
    (13, 0, 7),
    (14, 0, 8),
    (15, 0, 2),
    (16, 12, 1),
    (17, 0, 3),
    (18, 0, 3),
    (19, 0, 1),
    (20, 19, 2),
    (21, 0, 21),
    (22, 0, 25),
    (23, 0, 7),
    (24, 30, 5),
    (25, 0, 10),
    (26, 0, 11),
    (27, 0, 7),
    (28, 45, 10),
    (29, 0, 55),
    (30, 0, 64),
    (31, 0, 22),
    (32, 67, 20),
    (33, 0, 31),
    (34, 0, 35),
    (35, 0, 27),
    (36, 97, 36),
    (37, 0, 132),
    (38, 0, 156),
    (39, 0, 66),
    (40, 139, 65),
    (41, 0, 87),
    (42, 0, 100),
    (43, 0, 86),
    (44, 195, 111),
    (45, 0, 307),
    (46, 0, 360),
    (47, 0, 180),
    (48, 272, 188),
    (49, 0, 232),
    (50, 0, 269),
    (51, 0, 249),
    (52, 373, 310),
    (53, 0, 689),
    (54, 0, 804),
    (55, 0, 465),
    (56, 508, 503),
    (57, 0, 592),
    (58, 0, 685),
    (59, 0, 662),
    (60, 684, 803),
    (61, 0, 1514),
    (62, 0, 1755),
    (63, 0, 1154),
    (64, 915, 1267),
    (65, 0, 1445),
    (66, 0, 1663),
    (67, 0, 1659),
    (68, 1212, 1972),
    (69, 0, 3273),
    (70, 0, 3767),
    (71, 0, 2746),
    (72, 1597, 3039),
    (73, 0, 3402),
    (74, 0, 3891),
    (75, 0, 3968),
    (76, 2087, 4636),
    (77, 0, 6971),
    (78, 0, 7962),
    (79, 0, 6315),
    (80, 2714, 7010),
    (81, 0, 7757),
    (82, 0, 8808),
    (83, 0, 9121),
    (84, 3506, 10510),
    (85, 0, 14645),
    (86, 0, 16609),
    (87, 0, 14094),
    (88, 4508, 15640),
    (89, 0, 17174),
    (90, 0, 19367),
    (91, 0, 20280),
    (92, 5763, 23104),
    (93, 0, 30368),
    (94, 0, 34201),
    (95, 0, 30607),
    (96, 7338, 33906),
    (97, 0, 37043),
    (98, 0, 41508),
    (99, 0, 43818),
)

GOLDEN = {"spin": SPIN, "spinc": SPINC, "spinh": SPINH}

CHECKSUMS = {
    "spin": "d3a211818b45b440fb84ae0739ab9f540d4c612adbf0bcd0f4f6ae57bd5c640b",
    "spinc": "713bdb41b37d2215bd746708d9e55f69d67bc71aa0ba194224d07c10203cc41e",
    "spinh": "c3c085553205a10be1e331e04d6ee98889e4f485391a9fe9fe838c7f50ebc83c",
}



def canonical_text(rows) -> str:
    return "\n".join(f"{n}\t{r}\t{t}" for n, r, t in rows)


def checksum(rows) -> str:
    return hashlib.sha256(canonical_text(rows).encode()).hexdigest()


for _name, _rows in GOLDEN.items():
    if checksum(_rows) != CHECKSUMS[_name]:
        raise ImportError(f"golden table {_name} does not match its checksum")
