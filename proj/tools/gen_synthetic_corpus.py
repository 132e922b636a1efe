#!/usr/bin/env python3
"""Writes the bundled synthetic clutch-failure corpus.

Output (in --out, default data/synthetic):
  nodes.jsonl, edges.jsonl, sentences.jsonl, aliases.jsonl
  documents.jsonl   one failure report per line {doc_id, text}
  qa.jsonl          one question/reference pair per report

Every sentence of a report states one relation, and each relation becomes an
edge whose provenance points at that sentence. References restate the
report's relations with the same node labels. Output is byte-stable.
"""

import argparse
import json
from pathlib import Path

NODES = [
    # systems
    ("clutch system", "system"),
    ("transmission", "system"),
    ("engine", "system"),
    ("hydraulic release system", "system"),
    ("クラッチ", "system"),
    # components
    ("clutch disc", "component"),
    ("pressure plate", "component"),
    ("flywheel", "component"),
    ("dual mass flywheel", "component"),
    ("release bearing", "component"),
    ("pilot bearing", "component"),
    ("release fork", "component"),
    ("clutch pedal", "component"),
    ("clutch cable", "component"),
    ("master cylinder", "component"),
    ("slave cylinder", "component"),
    ("hydraulic line", "component"),
    ("input shaft", "component"),
    ("crankshaft rear seal", "component"),
    ("クラッチディスク", "component"),
    ("プレッシャープレート", "component"),
    # parts
    ("clutch facing", "part"),
    ("diaphragm spring", "part"),
    ("damper spring", "part"),
    ("rivet", "part"),
    ("piston seal", "part"),
    ("fluid reservoir", "part"),
    ("pivot ball", "part"),
    ("spline", "part"),
    ("bearing grease", "part"),
    ("ダイヤフラムスプリング", "part"),
    # statuses
    ("slipping", "status"),
    ("judder", "status"),
    ("wear", "status"),
    ("overheating", "status"),
    ("squeal noise", "status"),
    ("fluid leak", "status"),
    ("hard shifting", "status"),
    ("pedal vibration", "status"),
    ("burning smell", "status"),
    ("oil contamination", "status"),
    ("heat crack", "status"),
    ("warping", "status"),
    ("spongy pedal", "status"),
    ("air intrusion", "status"),
    ("clutch drag", "status"),
    ("gear grinding", "status"),
    ("spring fatigue", "status"),
    ("glazing", "status"),
    ("corrosion", "status"),
    ("摩耗", "status"),
    ("滑り", "status"),
    ("異音", "status"),
]

ALIASES = [
    ("DMF", "dual mass flywheel"),
    ("CSC", "slave cylinder"),
    ("throwout bearing", "release bearing"),
    ("clutch plate", "clutch disc"),
]

# Each report: (doc_id, question, reference, [(sentence, src, relation, dst)]).
REPORTS = [
    ("d01",
     "Why does the clutch disc show slipping after oil contamination of the clutch facing?",
     "Oil contamination of the clutch facing lowers friction so the clutch disc starts slipping; "
     "the slipping causes overheating and a burning smell, and the clutch facing suffers glazing.",
     [("Oil from the crankshaft rear seal reached the clutch facing and caused oil contamination.",
       "clutch facing", "status", "oil contamination"),
      ("The oil contamination lowered friction and the clutch disc started slipping.",
       "oil contamination", "causal", "slipping"),
      ("Continued slipping raised the disc temperature and led to overheating.",
       "slipping", "causal", "overheating"),
      ("Overheating produced a burning smell noticed by the driver.",
       "overheating", "causal", "burning smell"),
      ("The hot surface of the clutch facing showed glazing.",
       "overheating", "weak_causal", "glazing")]),
    ("d02",
     "What causes wear of the clutch facing and slipping in the clutch system?",
     "Wear of the clutch facing on the clutch disc exposes the rivet heads and the clutch disc ends up slipping; "
     "the clutch system then loses torque capacity.",
     [("The clutch disc is part of the clutch system.",
       "clutch system", "hierarchical", "clutch disc"),
      ("The clutch facing is riveted to the clutch disc.",
       "clutch disc", "hierarchical", "clutch facing"),
      ("Heavy stop-and-go driving caused wear of the clutch facing.",
       "clutch facing", "status", "wear"),
      ("With the facing worn down the rivet heads touched the flywheel.",
       "wear", "causal", "rivet"),
      ("The worn disc could no longer hold engine torque and slipping occurred.",
       "wear", "causal", "slipping")]),
    ("d03",
     "Why does the pressure plate show warping with judder at take-off?",
     "Overheating of the pressure plate leads to warping, and the warped pressure plate gives uneven clamping "
     "that produces judder and pedal vibration at take-off.",
     [("The pressure plate clamps the clutch disc against the flywheel.",
       "clutch system", "hierarchical", "pressure plate"),
      ("Repeated hill starts caused overheating of the pressure plate.",
       "pressure plate", "status", "overheating"),
      ("The overheating led to warping of the pressure plate face.",
       "overheating", "causal", "warping"),
      ("The warping gave uneven clamping and judder at take-off.",
       "warping", "causal", "judder"),
      ("Judder was felt as pedal vibration.",
       "judder", "weak_causal", "pedal vibration")]),
    ("d04",
     "What happens when the diaphragm spring suffers spring fatigue?",
     "Spring fatigue of the diaphragm spring reduces clamp load on the pressure plate, "
     "so the clutch disc shows slipping under load.",
     [("The diaphragm spring is part of the pressure plate assembly.",
       "pressure plate", "hierarchical", "diaphragm spring"),
      ("After high mileage the diaphragm spring showed spring fatigue.",
       "diaphragm spring", "status", "spring fatigue"),
      ("Spring fatigue reduced the clamp load and slipping appeared under load.",
       "spring fatigue", "causal", "slipping")]),
    ("d05",
     "Why does the release bearing make a squeal noise when the clutch pedal is pressed?",
     "Loss of bearing grease in the release bearing causes wear, and the worn release bearing "
     "makes a squeal noise whenever the clutch pedal is pressed.",
     [("The release bearing is part of the clutch system.",
       "clutch system", "hierarchical", "release bearing"),
      ("The bearing grease of the release bearing had dried out.",
       "release bearing", "hierarchical", "bearing grease"),
      ("Without bearing grease the release bearing developed wear.",
       "bearing grease", "causal", "wear"),
      ("The worn release bearing made a squeal noise when the clutch pedal was pressed.",
       "release bearing", "status", "squeal noise")]),
    ("d06",
     "How does a fluid leak at the slave cylinder lead to clutch drag?",
     "A worn piston seal in the slave cylinder causes a fluid leak; the leak lets air intrusion into the "
     "hydraulic line, which gives a spongy pedal and clutch drag with gear grinding.",
     [("The slave cylinder belongs to the hydraulic release system.",
       "hydraulic release system", "hierarchical", "slave cylinder"),
      ("The piston seal of the slave cylinder was worn.",
       "slave cylinder", "hierarchical", "piston seal"),
      ("The worn piston seal caused a fluid leak.",
       "piston seal", "causal", "fluid leak"),
      ("The fluid leak allowed air intrusion into the hydraulic line.",
       "fluid leak", "causal", "air intrusion"),
      ("Air intrusion gave a spongy pedal.",
       "air intrusion", "causal", "spongy pedal"),
      ("With a spongy pedal the clutch did not fully release and clutch drag occurred.",
       "spongy pedal", "causal", "clutch drag")]),
    ("d07",
     "Why does clutch drag cause gear grinding in the transmission?",
     "Clutch drag keeps the input shaft turning, so engaging a gear in the transmission produces "
     "gear grinding and hard shifting.",
     [("The input shaft is part of the transmission.",
       "transmission", "hierarchical", "input shaft"),
      ("Clutch drag kept the input shaft turning with the clutch pedal pressed.",
       "clutch drag", "causal", "input shaft"),
      ("Selecting first gear then produced gear grinding.",
       "clutch drag", "causal", "gear grinding"),
      ("The driver also reported hard shifting.",
       "gear grinding", "weak_causal", "hard shifting")]),
    ("d08",
     "What damages the dual mass flywheel and causes judder?",
     "Spring fatigue of the damper spring inside the dual mass flywheel lets the flywheel halves rattle, "
     "which produces judder and a squeal noise at idle.",
     [("The dual mass flywheel is bolted to the engine crankshaft.",
       "engine", "hierarchical", "dual mass flywheel"),
      ("The damper spring sits inside the dual mass flywheel.",
       "dual mass flywheel", "hierarchical", "damper spring"),
      ("The damper spring showed spring fatigue.",
       "damper spring", "status", "spring fatigue"),
      ("Fatigued springs let the flywheel halves rattle and caused judder.",
       "spring fatigue", "causal", "judder"),
      ("A squeal noise was heard at idle.",
       "dual mass flywheel", "status", "squeal noise")]),
    ("d09",
     "Why does the flywheel show heat crack marks?",
     "Slipping of the clutch disc causes overheating of the flywheel surface, and repeated overheating "
     "produces heat crack marks on the flywheel.",
     [("The flywheel is part of the clutch system.",
       "clutch system", "hierarchical", "flywheel"),
      ("Slipping of the clutch disc heated the flywheel surface.",
       "slipping", "causal", "overheating"),
      ("Repeated overheating produced heat crack marks on the flywheel.",
       "overheating", "causal", "heat crack"),
      ("The flywheel surface showed heat crack.",
       "flywheel", "status", "heat crack")]),
    ("d10",
     "Why is the clutch pedal heavy with a stretched clutch cable?",
     "Corrosion of the clutch cable makes it bind, so the clutch pedal becomes heavy and the "
     "release fork does not travel fully, giving clutch drag.",
     [("The clutch cable links the clutch pedal to the release fork.",
       "clutch pedal", "hierarchical", "clutch cable"),
      ("Corrosion was found along the clutch cable.",
       "clutch cable", "status", "corrosion"),
      ("The corrosion made the cable bind and the release fork did not travel fully.",
       "corrosion", "causal", "release fork"),
      ("Incomplete release fork travel gave clutch drag.",
       "release fork", "weak_causal", "clutch drag")]),
    ("d11",
     "What happens when the pivot ball of the release fork wears?",
     "Wear of the pivot ball lets the release fork tilt, causing pedal vibration and a squeal noise "
     "from the release bearing.",
     [("The release fork rests on a pivot ball.",
       "release fork", "hierarchical", "pivot ball"),
      ("The pivot ball showed wear.",
       "pivot ball", "status", "wear"),
      ("The worn pivot ball let the fork tilt and caused pedal vibration.",
       "pivot ball", "causal", "pedal vibration"),
      ("The tilted fork pushed the release bearing unevenly and a squeal noise appeared.",
       "release fork", "causal", "squeal noise")]),
    ("d12",
     "Why does the master cylinder cause a spongy pedal?",
     "A fluid leak from the master cylinder lowers the level in the fluid reservoir, air intrusion follows, "
     "and the clutch pedal becomes a spongy pedal.",
     [("The master cylinder belongs to the hydraulic release system.",
       "hydraulic release system", "hierarchical", "master cylinder"),
      ("The fluid reservoir feeds the master cylinder.",
       "master cylinder", "hierarchical", "fluid reservoir"),
      ("A fluid leak appeared at the master cylinder.",
       "master cylinder", "status", "fluid leak"),
      ("The low level in the fluid reservoir allowed air intrusion.",
       "fluid reservoir", "causal", "air intrusion"),
      ("Air intrusion made a spongy pedal.",
       "air intrusion", "causal", "spongy pedal")]),
    ("d13",
     "How does a worn pilot bearing affect the input shaft?",
     "Loss of bearing grease gives wear of the pilot bearing, which lets the input shaft wobble; "
     "the result is gear grinding and a squeal noise.",
     [("The pilot bearing supports the input shaft in the crankshaft.",
       "engine", "hierarchical", "pilot bearing"),
      ("The pilot bearing showed wear.",
       "pilot bearing", "status", "wear"),
      ("The worn pilot bearing let the input shaft wobble.",
       "pilot bearing", "causal", "input shaft"),
      ("A wobbling input shaft led to gear grinding.",
       "input shaft", "weak_causal", "gear grinding")]),
    ("d14",
     "Why does the spline of the clutch disc cause clutch drag?",
     "Corrosion of the spline stops the clutch disc from sliding on the input shaft, "
     "so clutch drag and hard shifting appear.",
     [("The clutch disc slides on the spline of the input shaft.",
       "input shaft", "hierarchical", "spline"),
      ("Corrosion was found on the spline.",
       "spline", "status", "corrosion"),
      ("The corrosion stopped the disc sliding and caused clutch drag.",
       "corrosion", "causal", "clutch drag"),
      ("Clutch drag led to hard shifting.",
       "clutch drag", "causal", "hard shifting")]),
    ("d15",
     "What does a leaking crankshaft rear seal do to the clutch facing?",
     "A fluid leak at the crankshaft rear seal of the engine throws oil onto the clutch facing; "
     "oil contamination follows and then judder.",
     [("The crankshaft rear seal is part of the engine.",
       "engine", "hierarchical", "crankshaft rear seal"),
      ("The crankshaft rear seal had a fluid leak.",
       "crankshaft rear seal", "status", "fluid leak"),
      ("Leaking oil reached the clutch facing.",
       "crankshaft rear seal", "causal", "oil contamination"),
      ("Oil contamination of the facing caused judder.",
       "oil contamination", "causal", "judder")]),
    ("d16",
     "Why does glazing of the clutch facing cause judder?",
     "Glazing of the clutch facing makes friction uneven, which causes judder and slipping of the clutch disc.",
     [("The clutch facing showed glazing.",
       "clutch facing", "status", "glazing"),
      ("Glazing made friction uneven and caused judder.",
       "glazing", "causal", "judder"),
      ("The glazed facing also allowed slipping.",
       "glazing", "weak_causal", "slipping")]),
    ("d17",
     "How does the clutch disc fail when the damper spring breaks?",
     "Spring fatigue lets the damper spring of the clutch disc break; the broken damper spring "
     "rattles and gives a squeal noise and judder.",
     [("The damper spring is part of the clutch disc.",
       "clutch disc", "hierarchical", "damper spring"),
      ("The damper spring broke after spring fatigue.",
       "spring fatigue", "causal", "damper spring"),
      ("The broken damper spring gave a squeal noise.",
       "damper spring", "causal", "squeal noise"),
      ("It also caused judder at engagement.",
       "damper spring", "weak_causal", "judder")]),
    ("d18",
     "What leads to a burning smell from the clutch system?",
     "Riding the clutch pedal keeps the clutch disc slipping, slipping leads to overheating and the "
     "overheating gives a burning smell.",
     [("Riding the clutch pedal kept the clutch disc partially engaged.",
       "clutch pedal", "causal", "slipping"),
      ("The slipping heated the disc.",
       "slipping", "causal", "overheating"),
      ("A burning smell came from the bell housing.",
       "overheating", "causal", "burning smell")]),
    ("d19",
     "Why does the hydraulic line cause a spongy pedal?",
     "Corrosion of the hydraulic line gives a fluid leak, the fluid leak allows air intrusion and "
     "the clutch pedal becomes a spongy pedal.",
     [("The hydraulic line connects the master cylinder to the slave cylinder.",
       "hydraulic release system", "hierarchical", "hydraulic line"),
      ("Corrosion was found on the hydraulic line.",
       "hydraulic line", "status", "corrosion"),
      ("The corroded hydraulic line had a fluid leak.",
       "hydraulic line", "causal", "fluid leak"),
      ("The fluid leak allowed air intrusion and a spongy pedal.",
       "fluid leak", "causal", "air intrusion")]),
    ("d20",
     "Why does the pressure plate cause hard shifting?",
     "Warping of the pressure plate prevents full release, giving clutch drag and hard shifting "
     "in the transmission.",
     [("The pressure plate showed warping.",
       "pressure plate", "status", "warping"),
      ("The warped plate prevented full release and caused clutch drag.",
       "warping", "causal", "clutch drag"),
      ("Clutch drag led to hard shifting in the transmission.",
       "clutch drag", "causal", "hard shifting")]),
    ("d21",
     "クラッチの滑りの原因は何ですか？",
     "クラッチディスクの摩耗によりクラッチの滑りが発生し、滑りは過熱と異音につながる。",
     [("クラッチディスクはクラッチの構成部品である。",
       "クラッチ", "hierarchical", "クラッチディスク"),
      ("クラッチディスクに摩耗が見られた。",
       "クラッチディスク", "status", "摩耗"),
      ("摩耗によりクラッチの滑りが発生した。",
       "摩耗", "causal", "滑り"),
      ("滑りが続いて異音が発生した。",
       "滑り", "weak_causal", "異音")]),
    ("d22",
     "プレッシャープレートのダイヤフラムスプリングの不具合でクラッチに何が起きますか？",
     "ダイヤフラムスプリングの摩耗によりプレッシャープレートの押し付け力が低下し、クラッチの滑りが起きる。",
     [("プレッシャープレートはクラッチの構成部品である。",
       "クラッチ", "hierarchical", "プレッシャープレート"),
      ("ダイヤフラムスプリングはプレッシャープレートの部品である。",
       "プレッシャープレート", "hierarchical", "ダイヤフラムスプリング"),
      ("ダイヤフラムスプリングに摩耗が発生した。",
       "ダイヤフラムスプリング", "status", "摩耗"),
      ("押し付け力が低下してクラッチの滑りが起きた。",
       "ダイヤフラムスプリング", "causal", "滑り")]),
    ("d23",
     "Why does the slave cylinder make the release bearing fail?",
     "A fluid leak from the slave cylinder soaks the release bearing, washing out bearing grease and "
     "causing wear and a squeal noise.",
     [("The slave cylinder pushes the release bearing.",
       "slave cylinder", "causal", "release bearing"),
      ("The slave cylinder showed a fluid leak.",
       "slave cylinder", "status", "fluid leak"),
      ("The leak washed out the bearing grease.",
       "fluid leak", "causal", "bearing grease"),
      ("The release bearing then gave a squeal noise.",
       "release bearing", "weak_causal", "squeal noise")]),
    ("d24",
     "How does the engine transmit torque through the clutch system to the transmission?",
     "The engine drives the flywheel, the clutch system clamps the clutch disc between the flywheel and the "
     "pressure plate, and the clutch disc drives the input shaft of the transmission.",
     [("The engine drives the flywheel.",
       "engine", "hierarchical", "flywheel"),
      ("The clutch system connects the engine to the transmission.",
       "clutch system", "weak_causal", "transmission"),
      ("The clutch disc drives the input shaft.",
       "clutch disc", "weak_causal", "input shaft")]),
]


def build():
    node_ids = {}
    nodes = []
    for i, (label, category) in enumerate(NODES, start=1):
        node_id = f"n{i:02d}"
        node_ids[label] = node_id
        nodes.append({"id": node_id, "label": label, "category": category})

    sentences = []
    edges = []
    edge_index = {}
    documents = []
    qa = []
    for doc_id, question, reference, facts in REPORTS:
        texts = []
        for sent_id, (text, src, relation, dst) in enumerate(facts, start=1):
            sentences.append({"doc": doc_id, "sent": sent_id, "text": text})
            texts.append(text)
            key = (node_ids[src], relation, node_ids[dst])
            if key not in edge_index:
                edge_index[key] = len(edges)
                edges.append({"id": f"e{len(edges) + 1:03d}", "src": key[0], "dst": key[2],
                              "relation": relation, "provenance": []})
            edges[edge_index[key]]["provenance"].append({"doc": doc_id, "sent": sent_id})
        sep = "" if any("　" <= ch <= "鿿" for ch in texts[0]) else " "
        documents.append({"doc_id": doc_id, "text": sep.join(texts)})
        qa.append({"id": f"{doc_id}-q1", "question": question, "reference_answer": reference,
                   "source_doc": doc_id})

    aliases = [{"alias": alias, "node": node_ids[label]} for alias, label in ALIASES]
    return {
        "nodes.jsonl": nodes,
        "edges.jsonl": edges,
        "sentences.jsonl": sentences,
        "aliases.jsonl": aliases,
        "documents.jsonl": documents,
        "qa.jsonl": qa,
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data" / "synthetic")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name, records in build().items():
        with open(args.out / name, "w", encoding="utf-8", newline="\n") as f:
            for record in records:
                f.write(json.dumps(record, ensure_ascii=False) + "\n")
    counts = {name: len(records) for name, records in build().items()}
    print(" ".join(f"{k.split('.')[0]}={v}" for k, v in counts.items()))


if __name__ == "__main__":
    main()
