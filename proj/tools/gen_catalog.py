#!/usr/bin/env python3
"""Regenerates assets/catalog.json.

Stroke templates are hand-parameterized approximations of each letter's
isolated form in screen coordinates (y grows downward). Strokes follow the
conventional writing order: main body first, right to left, then dot groups.
Every template is normalized with the same rule the trace engine applies to
learner samples: the longer side of the bounding box spans [0, 1] and the
shorter side is centered.
"""

import json
import math
import pathlib

HARAKAT = ["fathah", "kasrah", "dammah", "sukun"]


def arc(cx, cy, rx, ry, a0, a1, n=9):
    return [(cx + rx * math.cos(a0 + (a1 - a0) * i / (n - 1)),
             cy + ry * math.sin(a0 + (a1 - a0) * i / (n - 1))) for i in range(n)]


def dots(x, y, count):
    # Dot groups are written as one short right-to-left tick.
    half = 0.03 + 0.03 * (count - 1)
    return [(x + half, y), (x - half, y)]


def bowl(depth=0.25, top=0.35):
    # Right riser, flat-bottomed bowl, left tip (ba/ta/tsa/nun/fa/qaf tails).
    return [(1.0, top - 0.1), (0.96, top + depth * 0.6), (0.85, top + depth),
            (0.6, top + depth * 1.05), (0.35, top + depth * 1.05),
            (0.12, top + depth * 0.85), (0.02, top + depth * 0.4), (0.0, top)]


def jim_body():
    return [(0.25, 0.15), (0.55, 0.08), (0.85, 0.12), (0.55, 0.25), (0.3, 0.4),
            (0.18, 0.6), (0.25, 0.82), (0.5, 0.95), (0.8, 0.97)]


def dal_body():
    return [(0.35, 0.0), (0.55, 0.25), (0.7, 0.55), (0.62, 0.7), (0.35, 0.72), (0.1, 0.7)]


def ra_body():
    return [(0.75, 0.1), (0.72, 0.35), (0.62, 0.6), (0.45, 0.82), (0.2, 0.97), (0.0, 1.0)]


def sin_body():
    return [(1.0, 0.2), (0.95, 0.4), (0.88, 0.2), (0.82, 0.4), (0.75, 0.2),
            (0.7, 0.4), (0.6, 0.45)] + [(0.6 - 0.55 * (1 - math.cos(t * math.pi)) / 2,
                                          0.45 + 0.35 * math.sin(t * math.pi))
                                         for t in (0.2, 0.4, 0.6, 0.8, 1.0)]


def shad_body():
    return [(0.6, 0.4), (0.8, 0.15), (1.0, 0.2), (0.95, 0.4), (0.65, 0.42),
            (0.55, 0.5), (0.45, 0.75), (0.25, 0.82), (0.05, 0.7), (0.0, 0.5)]


def tha_strokes():
    loop = [(0.2, 0.6), (0.5, 0.35), (0.85, 0.4), (0.9, 0.55), (0.6, 0.65), (0.0, 0.66)]
    stem = [(0.3, 0.0), (0.3, 0.55)]
    return [loop, stem]


def ain_body():
    return [(0.75, 0.12), (0.55, 0.02), (0.35, 0.12), (0.4, 0.3), (0.7, 0.38),
            (0.45, 0.48), (0.3, 0.68), (0.4, 0.9), (0.7, 1.0), (0.9, 0.95)]


def fa_body(deep=False):
    head = [(0.85, 0.3), (0.95, 0.15), (0.8, 0.05), (0.7, 0.2), (0.82, 0.35)]
    tail = bowl(depth=0.35 if deep else 0.15, top=0.35)[2:]
    return head + tail


def kaf_strokes():
    body = [(0.85, 0.0), (0.85, 0.6), (0.7, 0.75), (0.3, 0.78), (0.05, 0.7), (0.0, 0.55)]
    mark = [(0.55, 0.25), (0.4, 0.32), (0.55, 0.4), (0.4, 0.47)]
    return [body, mark]


def lam_body():
    return [(0.7, 0.0), (0.7, 0.55), (0.62, 0.8), (0.4, 0.9), (0.15, 0.82), (0.05, 0.6)]


def mim_body():
    return [(0.75, 0.2), (0.6, 0.1), (0.45, 0.2), (0.6, 0.32), (0.78, 0.3),
            (0.6, 0.36), (0.4, 0.4), (0.38, 0.7), (0.38, 1.0)]


def ha_round_body():
    return arc(0.5, 0.5, 0.4, 0.35, -math.pi / 2, 1.6 * math.pi - 0.35, 12)


def wau_body():
    return [(0.65, 0.35), (0.8, 0.2), (0.95, 0.35), (0.85, 0.5), (0.75, 0.55),
            (0.7, 0.7), (0.55, 0.9), (0.3, 1.0), (0.1, 0.98)]


def ya_body():
    return [(0.8, 0.0), (0.6, 0.15), (0.7, 0.3), (1.0, 0.35), (0.75, 0.45),
            (0.45, 0.55), (0.2, 0.6), (0.05, 0.52), (0.0, 0.4)]


# (id, name, romanization, base code point, presentation-form start, joins forward,
#  strokes, dotted)
LETTERS = [
    ("alif", "Alif", "a", 0x0627, 0xFE8D, False, [[(0.5, 0.0), (0.5, 0.5), (0.5, 1.0)]], False),
    ("ba", "Ba", "b", 0x0628, 0xFE8F, True, [bowl(), dots(0.5, 0.85, 1)], True),
    ("ta", "Ta", "t", 0x062A, 0xFE95, True, [bowl(), dots(0.5, 0.05, 2)], True),
    ("tsa", "Tsa", "ts", 0x062B, 0xFE99, True, [bowl(), dots(0.5, 0.02, 3)], True),
    ("jim", "Jim", "j", 0x062C, 0xFE9D, True, [jim_body(), dots(0.5, 0.62, 1)], True),
    ("hha", "Ha", "h", 0x062D, 0xFEA1, True, [jim_body()], False),
    ("kha", "Kha", "kh", 0x062E, 0xFEA5, True, [jim_body(), dots(0.55, -0.1, 1)], True),
    ("dal", "Dal", "d", 0x062F, 0xFEA9, False, [dal_body()], False),
    ("dzal", "Dzal", "dz", 0x0630, 0xFEAB, False, [dal_body(), dots(0.3, -0.2, 1)], True),
    ("ra", "Ra", "r", 0x0631, 0xFEAD, False, [ra_body()], False),
    ("zai", "Zai", "z", 0x0632, 0xFEAF, False, [ra_body(), dots(0.8, -0.15, 1)], True),
    ("sin", "Sin", "s", 0x0633, 0xFEB1, True, [sin_body()], False),
    ("syin", "Syin", "sy", 0x0634, 0xFEB5, True, [sin_body(), dots(0.85, 0.02, 3)], True),
    ("shad", "Shad", "sh", 0x0635, 0xFEB9, True, [shad_body()], False),
    ("dhad", "Dhad", "dh", 0x0636, 0xFEBD, True, [shad_body(), dots(0.8, -0.05, 1)], True),
    ("tha", "Tha", "th", 0x0637, 0xFEC1, True, tha_strokes(), False),
    ("zha", "Zha", "zh", 0x0638, 0xFEC5, True, tha_strokes() + [dots(0.6, 0.15, 1)], True),
    ("ain", "'Ain", "'", 0x0639, 0xFEC9, True, [ain_body()], False),
    ("ghain", "Ghain", "gh", 0x063A, 0xFECD, True, [ain_body(), dots(0.55, -0.15, 1)], True),
    ("fa", "Fa", "f", 0x0641, 0xFED1, True, [fa_body(), dots(0.82, -0.12, 1)], True),
    ("qaf", "Qaf", "q", 0x0642, 0xFED5, True, [fa_body(deep=True), dots(0.82, -0.12, 2)], True),
    ("kaf", "Kaf", "k", 0x0643, 0xFED9, True, kaf_strokes(), False),
    ("lam", "Lam", "l", 0x0644, 0xFEDD, True, [lam_body()], False),
    ("mim", "Mim", "m", 0x0645, 0xFEE1, True, [mim_body()], False),
    ("nun", "Nun", "n", 0x0646, 0xFEE5, True, [bowl(depth=0.4, top=0.3), dots(0.5, 0.1, 1)], True),
    ("wau", "Wau", "w", 0x0648, 0xFEED, False, [wau_body()], False),
    ("ha", "Ha (round)", "h", 0x0647, 0xFEE9, True, [ha_round_body()], False),
    ("ya", "Ya", "y", 0x064A, 0xFEF1, True, [ya_body(), dots(0.45, 0.8, 2)], True),
]


def normalize(strokes):
    xs = [p[0] for s in strokes for p in s]
    ys = [p[1] for s in strokes for p in s]
    minx, maxx, miny, maxy = min(xs), max(xs), min(ys), max(ys)
    w, h = maxx - minx, maxy - miny
    extent = max(w, h)
    ox = (1.0 - w / extent) / 2.0
    oy = (1.0 - h / extent) / 2.0
    out = []
    for s in strokes:
        out.append([[round((x - minx) / extent + ox, 4), round((y - miny) / extent + oy, 4)]
                    for x, y in s])
    return out


def main():
    letters = []
    for ordinal, (lid, name, roman, base, pres, joins, strokes, dotted) in enumerate(LETTERS, 1):
        # Presentation Forms-B order: isolated, final, initial, medial.
        forms = [{"position": "final", "glyph": chr(pres + 1)}]
        if joins:
            forms.append({"position": "initial", "glyph": chr(pres + 2)})
            forms.append({"position": "medial", "glyph": chr(pres + 3)})
        audio = [{"harakat": h, "uri": f"audio/{lid}_{h}.ogg",
                  "bytes": 96000 + 4096 * ((ordinal * 7 + i * 3) % 16)}
                 for i, h in enumerate(HARAKAT)]
        letters.append({
            "id": lid,
            "ordinal": ordinal,
            "name": name,
            "romanization": roman,
            "glyph_isolated": chr(pres),
            "base_glyph": chr(base),
            "dotted": dotted,
            "forms": forms,
            "strokes": normalize(strokes),
            "audio": audio,
        })
    out = pathlib.Path(__file__).resolve().parent.parent / "assets" / "catalog.json"
    out.parent.mkdir(exist_ok=True)
    out.write_text(json.dumps({"letters": letters}, ensure_ascii=False, indent=1) + "\n",
                   encoding="utf-8")


if __name__ == "__main__":
    main()
