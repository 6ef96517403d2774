#!/usr/bin/env python3
"""Writes the 10-emoji / 12-query / D=6 golden fixture under tests/data/golden.

Axes: 0 affection, 1 animal, 2 water, 3 food, 4 celebration, 5 sport.
Word vectors are a primary direction plus a small deterministic offset, so
the fixture is stable across runs and platforms.
"""
import hashlib
import json
import os
import sys

AXES = {
    0: "love face beloved dear adorable heart romance romantic kiss affection feeling "
       "care person pleasure symbol couple hug hugging wedding groom bridegroom woman intense",
    1: "dog puppy pet cat kitten animal furry domesticated domesticate loyal companion "
       "golden retriever tabby park couch sleep sleeping",
    2: "wave waves ocean sea surf water beach shore sand sandy swim swimming seashore coast "
       "seacoast lakeside lake boat umbrella relax relaxing sandbar crash crashing big",
    3: "pizza food cheese bake baked dish flat bread tomato eat eaten cake pie plate ice cream dinner",
    4: "birthday celebration celebrate party parties confetti music dance dancing balloon "
       "candle candles friend friends",
    5: "soccer ball sport play playing team field player kick kicks volleyball game",
}
MIXED = {
    "sweet": [0.5, 0.0, 0.0, 0.7, 0.3, 0.0],
    "vacation": [0.0, 0.0, 0.7, 0.0, 0.5, 0.0],
    "people": [0.3, 0.0, 0.0, 0.0, 0.6, 0.2],
    "small": [0.2, 0.4, 0.0, 0.1, 0.0, 0.1],
    "used": [0.05, 0.05, 0.05, 0.05, 0.05, 0.05],
    "variety": [0.1, 0.1, 0.1, 0.2, 0.1, 0.1],
}


def offset(word, axis):
    h = hashlib.sha256(f"{word}/{axis}".encode()).digest()
    return (h[0] / 255.0 - 0.5) * 0.3


def vector(word, axis):
    return [round(1.0 if a == axis else offset(word, a), 4) for a in range(6)]


def embeddings():
    rows = []
    for axis, words in AXES.items():
        for w in words.split():
            rows.append((w, vector(w, axis)))
    for w, v in MIXED.items():
        rows.append((w, v))
    return rows


EMOJIS = [
    ("U+1F618", "face blowing a kiss",
     [("love", "n"), ("face", "n"), ("beloved", "adj"), ("dear", "adj"), ("adorable", "adj")],
     ["Love is a variety of different feelings, states, and attitudes that ranges from "
      "interpersonal affection to pleasure.",
      "An intense feeling of affection and care towards another person."]),
    ("U+2764 U+FE0F", "red heart", [("love", "n"), ("heart", "n"), ("romance", "n")],
     ["A symbol of love and romantic feelings."]),
    ("U+1F436", "dog face", [("dog", "n"), ("puppy", "n"), ("pet", "n")],
     ["A domesticated animal kept as a pet; dogs are loyal companions."]),
    ("U+1F431", "cat face", [("cat", "n"), ("kitten", "n"), ("pet", "n")],
     ["A small furry animal often kept as a pet."]),
    ("U+1F30A", "water wave", [("wave", "n"), ("ocean", "n"), ("sea", "n"), ("surf", "v")],
     ["Waves of water breaking on the beach at the sea shore."]),
    ("U+1F3D6", "beach with umbrella", [("beach", "n"), ("sand", "n"), ("vacation", "n")],
     ["A sandy shore by the sea used for swimming and relaxing."]),
    ("U+1F355", "pizza", [("pizza", "n"), ("food", "n"), ("cheese", "n")],
     ["A baked dish of flat bread with cheese and tomato, eaten as food."]),
    ("U+1F382", "birthday cake", [("cake", "n"), ("birthday", "n"), ("celebration", "n")],
     ["A sweet cake eaten at birthday parties to celebrate."]),
    ("U+1F389", "party popper", [("party", "n"), ("celebrate", "v"), ("confetti", "n")],
     ["Used to celebrate a party with music and dancing."]),
    ("U+26BD", "soccer ball", [("soccer", "n"), ("ball", "n"), ("sport", "n")], []),
]

QUERIES = [
    ("q01", [("golden retriever", 0.7), ("Labrador retriever", 0.2)],
     "A dog playing with a ball in the park", "U+1F436"),
    ("q02", [("tabby, tabby cat", 0.6), ("Egyptian cat", 0.3)],
     "A cat sleeping on a couch", "U+1F431"),
    ("q03", [("seashore, coast, seacoast", 0.5), ("sandbar, sand bar", 0.3)],
     "People relaxing on a sandy beach", "U+1F3D6"),
    ("q04", [("seashore, coast, seacoast", 0.4), ("lakeside, lakeshore", 0.3)],
     "Big waves crashing in the ocean", "U+1F30A"),
    ("q05", [("pizza, pizza pie", 0.8), ("plate", 0.1)],
     "A cheese pizza on a plate", "U+1F355"),
    ("q06", [("trifle", 0.4), ("candle, taper, wax light", 0.3)],
     "A birthday cake with candles", "U+1F382"),
    ("q07", [("balloon", 0.6), ("candle, taper, wax light", 0.1)],
     "Friends dancing at a party", "U+1F389"),
    ("q08", [("soccer ball", 0.9)],
     "A player kicks the ball on the field", "U+26BD"),
    ("q09", [("groom, bridegroom", 0.5), ("suit, suit of clothes", 0.2)],
     "A couple hugging at their wedding", "U+2764 U+FE0F"),
    ("q10", [("lipstick, lip rouge", 0.5), ("mask", 0.2)],
     "A woman blowing a kiss", "U+1F618"),
    ("q11", [("volleyball", 0.6), ("seashore, coast, seacoast", 0.3)],
     "", "U+1F3D6"),
    ("q12", [("golden retriever", 0.5), ("lakeside, lakeshore", 0.4)],
     "A dog swimming in the lake", "U+1F30A"),
]


def main(out_dir):
    os.makedirs(out_dir, exist_ok=True)
    rows = embeddings()
    with open(os.path.join(out_dir, "embeddings.vec"), "w") as f:
        f.write(f"{len(rows)} 6\n")
        for w, v in rows:
            f.write(w + " " + " ".join(f"{x:.4f}" for x in v) + "\n")
    inventory = {
        "version": "golden-fixture-1",
        "emojis": [
            {"codepoint": cp, "name": name,
             "senses": [{"word": w, "pos": p} for w, p in senses],
             "definitions": defs}
            for cp, name, senses, defs in EMOJIS
        ],
    }
    with open(os.path.join(out_dir, "inventory.json"), "w") as f:
        json.dump(inventory, f, indent=2, ensure_ascii=False)
        f.write("\n")
    with open(os.path.join(out_dir, "queries.jsonl"), "w") as f:
        for qid, classes, caption, gold in QUERIES:
            f.write(json.dumps({"id": qid,
                                "classes": [{"label": l, "prob": p} for l, p in classes],
                                "caption": caption, "gold": gold}) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else
         os.path.join(os.path.dirname(__file__), "..", "data", "golden"))
