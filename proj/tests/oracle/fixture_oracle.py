#!/usr/bin/env python3
"""Brute-force reference computation over the bundled fixture corpus.

Independent of the C++ pipeline: uses Python's html.parser, regex
tokenization and numpy. Prints the structural facts that the acceptance
suite freezes (component counts, intra/inter topic cosine means).

    python3 tests/oracle/fixture_oracle.py data/fixture/manifest.tsv
"""
import re
from fractions import Fraction
import sys
from html.parser import HTMLParser
from pathlib import Path

import numpy as np

BLOCK = {"p", "div", "br", "li", "ul", "ol", "h1", "h2", "h3", "h4", "h5", "h6",
         "table", "tr", "td", "th", "blockquote", "section", "article", "header",
         "footer", "nav", "pre", "hr", "body", "html", "main", "aside", "dd", "dt", "dl"}


class Extract(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.skip = 0
        self.in_title = False
        self.title = ""
        self.paras = [""]

    def handle_starttag(self, tag, attrs):
        if tag in ("script", "style"):
            self.skip += 1
        elif tag == "title":
            self.in_title = True
        elif tag in BLOCK:
            self.paras.append("")

    def handle_endtag(self, tag):
        if tag in ("script", "style"):
            self.skip -= 1
        elif tag == "title":
            self.in_title = False
        elif tag in BLOCK:
            self.paras.append("")

    def handle_data(self, data):
        if self.skip:
            return
        if self.in_title:
            self.title += data
            return
        self.paras[-1] += data


def paragraphs(path, media):
    text = path.read_text(encoding="utf-8")
    if media == "html":
        e = Extract()
        e.feed(text)
        return [" ".join(p.split()) for p in e.paras if p.split()]
    return [p.strip() for p in re.split(r"\n[ \t]*\n", text.strip()) if p.strip()]


def normalize(tok):
    w = tok.lower()
    if len(w) >= 4 and w.endswith("s") and w[-2] != "s":
        w = w[:-1]
    return w


def load_stop(path):
    out = set()
    for line in path.read_text().splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.add(normalize(line))
    return out


def reaches(gram, i, j, threshold):
    # cos >= t decided exactly on the integer Gram entries; floating point
    # puts pairs sitting exactly on the threshold on either side.
    g, t = int(gram[i, j]), Fraction(str(threshold))
    if g == 0:
        return False
    return Fraction(g * g) >= t * t * int(gram[i, i]) * int(gram[j, j])


def analyse(manifest, docs_filter=None, threshold=0.5, min_freq=2, cap=100):
    root = manifest.parent
    stop = load_stop(root.parent / "stopwords_uspto.txt")
    units, labels = [], []
    for line in manifest.read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        path, media, label = line.split("\t")
        if docs_filter and not docs_filter(label):
            continue
        for p in paragraphs(root / path, media):
            units.append([w for w in map(normalize, re.findall(r"[A-Za-z]+", p)) if w not in stop])
            labels.append(label)
    freq = {}
    for u in units:
        for w in u:
            freq[w] = freq.get(w, 0) + 1
    # smallest t >= min_freq with |{f >= t}| <= cap, by brute force
    t = min_freq
    while sum(1 for f in freq.values() if f >= t) > cap:
        t += 1
    words = sorted((w for w, f in freq.items() if f >= t), key=lambda w: (-freq[w], w))
    m = np.array([[u.count(w) for w in words] for u in units], dtype=float)
    norms = np.sqrt((m * m).sum(axis=0))
    cos = np.array([[float(m[:, i] @ m[:, j]) / (norms[i] * norms[j]) for j in range(len(words))]
                    for i in range(len(words))])
    gram = (m.T @ m).astype(np.int64)
    adj = {i: set() for i in range(len(words))}
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            if reaches(gram, i, j, threshold):
                adj[i].add(j)
                adj[j].add(i)
    kept = [i for i in adj if adj[i]]
    seen, comps = set(), []
    for s in kept:
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for nb in adj[v]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        comps.append(sorted(comp))
    topic = {}
    for i, w in enumerate(words):
        tags = {labels[k].split("/")[0] for k, u in enumerate(units) if w in u}
        topic[i] = tags.pop() if len(tags) == 1 else "bridge"
    intra, inter = [], []
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            if "bridge" in (topic[i], topic[j]):
                continue
            (intra if topic[i] == topic[j] else inter).append(cos[i, j])
    edges = sum(len(a) for a in adj.values()) // 2
    n = len(kept)
    return {
        "units": len(units), "vocabulary": len(freq), "tokens": sum(freq.values()),
        "effective_min_freq": t, "selected": len(words), "nodes": n, "edges": edges,
        "components": len(comps), "density": 2 * edges / (n * (n - 1)) if n > 1 else 0.0,
        "pruned": len(words) - n,
        "mean_intra": float(np.mean(intra)), "mean_inter": float(np.mean(inter)),
        "bridges": [words[i] for i in topic if topic[i] == "bridge"],
        "component_words": [[words[i] for i in c] for c in comps],
    }


if __name__ == "__main__":
    manifest = Path(sys.argv[1] if len(sys.argv) > 1 else "data/fixture/manifest.tsv")
    full = analyse(manifest)
    for k, v in full.items():
        print(f"full.{k} = {v}")
    for name, flt in (("topic_a", lambda l: l.startswith("topic-a")),):
        res = analyse(manifest, flt)
        for k in ("selected", "nodes", "edges", "components", "density"):
            print(f"{name}.{k} = {res[k]}")
    res = analyse(manifest, threshold=0.1)
    for k in ("nodes", "edges", "components", "pruned"):
        print(f"elaborate.{k} = {res[k]}")
