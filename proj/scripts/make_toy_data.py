# Copyright 2026 The Texkit Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the bundled toy knowledge base and the test fixtures.

Output is fully deterministic. Derived artifacts (isa.tsv, stats.tsv,
clusters.jsonl, pos.model, ner.model) are produced afterwards by
scripts/build_toy_models.sh with the texkit CLI.
"""

import argparse
import hashlib
import json
import os

# ---------------------------------------------------------------------------
# Ontology.

ROOTS = {
    "person.generic": (["person", "people", "人", "人物"], ["Barack Obama"]),
    "loc.generic": (["location", "place", "地点"], ["Paris"]),
    "org.generic": (["organization", "organisation", "机构", "组织"], ["United Nations"]),
    "work.generic": (["work", "作品"], ["Hamlet"]),
    "food.generic": (["food", "食物", "食品"], ["rice"]),
    "time.generic": (["time", "时间"], ["tomorrow"]),
    "quantity.generic": (["quantity", "amount", "数量"], ["3 kg"]),
    "language.generic": (["language", "语言"], ["English"]),
    "product.generic": (["product", "产品"], ["iPhone"]),
    "event.generic": (["event", "事件"], ["Olympics"]),
}

CHILDREN = [
    ("loc.city", "loc.generic", ["city", "town", "城市"],
     ["Los Angeles", "New York", "Paris", "London", "Tokyo", "北京", "上海"]),
    ("loc.country", "loc.generic", ["country", "nation", "国家"],
     ["China", "France", "Japan", "Germany", "中国"]),
    ("work.movie", "work.generic", ["movie", "film", "电影"],
     ["Captain Marvel", "Titanic", "Star Wars", "Spider-Man", "泰坦尼克号"]),
    ("work.book", "work.generic", ["book", "novel", "书", "小说"],
     ["Hamlet", "Moby Dick", "红楼梦"]),
    ("work.song", "work.generic", ["song", "歌曲"], ["Yesterday", "Imagine"]),
    ("food.fruit", "food.generic", ["fruit", "水果"],
     ["apple", "banana", "orange", "苹果", "香蕉"]),
    ("food.drink", "food.generic", ["drink", "beverage", "饮料"],
     ["coffee", "tea", "juice", "茶"]),
    ("food.vegetable", "food.generic", ["vegetable", "蔬菜"],
     ["carrot", "potato", "cabbage"]),
    ("org.company", "org.generic", ["company", "firm", "corporation", "公司"],
     ["Apple", "Google", "Microsoft", "Tencent", "腾讯"]),
    ("org.university", "org.generic", ["university", "college", "大学"],
     ["Stanford", "MIT", "Harvard", "北京大学"]),
    ("org.sports_team", "org.generic", ["team", "club", "球队"],
     ["Lakers", "Real Madrid"]),
    ("person.actor", "person.generic", ["actor", "actress", "演员"],
     ["Brie Larson", "Tom Hanks", "成龙"]),
    ("person.politician", "person.generic", ["politician", "president", "政治家"],
     ["Barack Obama", "Angela Merkel"]),
    ("person.athlete", "person.generic", ["athlete", "player", "运动员"],
     ["LeBron James", "Lionel Messi", "姚明"]),
    ("language.human_lang", "language.generic", ["language", "human language", "语言"],
     ["English", "Chinese", "French", "汉语"]),
    ("language.programming", "language.generic",
     ["programming language", "language", "编程语言"],
     ["python", "java", "c++", "rust"]),
    ("product.phone", "product.generic", ["phone", "smartphone", "手机"],
     ["iPhone", "Galaxy", "Pixel"]),
    ("product.car", "product.generic", ["car", "automobile", "汽车"],
     ["Model S", "Civic", "Corolla"]),
    ("event.sports", "event.generic", ["sports event", "tournament", "比赛"],
     ["World Cup", "Olympics"]),
    ("event.festival", "event.generic", ["festival", "holiday", "节日"],
     ["Christmas", "Spring Festival", "春节"]),
]


def ontology_rows():
    rows = []
    for tid, (names, inst) in ROOTS.items():
        rows.append({"type_id": tid, "names": names, "instances": inst})
    for tid, parent, names, inst in CHILDREN:
        rows.append({"type_id": tid, "parent": parent, "names": names,
                     "instances": inst})
    return rows


# ---------------------------------------------------------------------------
# Hearst corpus. Each hypernym -> hyponym list is written with two
# different patterns so that every pair clears min_count = 2.

GROUPS_EN = [
    ("movies", "films", ["Captain Marvel", "Spider-Man", "Captain America",
                         "Titanic", "Star Wars", "Avatar", "Iron Man"]),
    ("cities", "towns", ["Los Angeles", "New York", "Paris", "London",
                         "Tokyo", "Chicago", "Boston"]),
    ("countries", "nations", ["China", "France", "Japan", "Germany", "Brazil"]),
    ("fruits", None, ["apple", "banana", "orange", "grape", "mango", "pear"]),
    ("drinks", "beverages", ["coffee", "tea", "juice", "milk"]),
    ("vegetables", None, ["carrot", "potato", "cabbage", "onion"]),
    ("companies", "firms", ["Apple", "Google", "Microsoft", "Amazon",
                            "Tencent"]),
    ("universities", None, ["Stanford", "MIT", "Harvard", "Oxford"]),
    ("actors", None, ["Brie Larson", "Tom Hanks", "Samuel Jackson",
                      "Scarlett Johansson"]),
    ("politicians", None, ["Barack Obama", "Angela Merkel", "Emmanuel Macron"]),
    ("athletes", "players", ["LeBron James", "Lionel Messi", "Roger Federer"]),
    ("programming languages", None, ["python", "java", "rust", "haskell"]),
    ("books", "novels", ["Hamlet", "Moby Dick", "Dracula", "Emma"]),
    ("phones", "smartphones", ["iPhone", "Galaxy", "Pixel"]),
    ("cars", None, ["Civic", "Corolla", "Mustang"]),
    ("festivals", "holidays", ["Christmas", "Easter", "Halloween"]),
]

GROUPS_CHS = [
    ("电影", ["泰坦尼克号", "阿凡达", "星球大战", "蜘蛛侠"]),
    ("城市", ["北京", "上海", "广州", "深圳", "洛杉矶"]),
    ("水果", ["苹果", "香蕉", "橘子", "葡萄"]),
    ("公司", ["腾讯", "阿里巴巴", "百度", "华为"]),
    ("国家", ["中国", "法国", "日本", "德国"]),
    ("运动员", ["姚明", "刘翔", "李娜"]),
]

FILLER_EN = [
    "The premiere was held in a large theater downtown.",
    "Many people watched the film on the first weekend.",
    "The weather was warm and the streets were busy.",
    "She bought fresh bread at the market this morning.",
    "The new phone was released last year.",
    "He stayed in San Francisco for two weeks.",
    "The team won the final game of the season.",
    "Our office moved to a bigger building in the city.",
]


def en_list(items):
    if len(items) == 1:
        return items[0]
    return ", ".join(items[:-1]) + " and " + items[-1]


def corpus_lines():
    lines = []
    for plural, alt, items in GROUPS_EN:
        lines.append(f"We discussed {plural} such as {en_list(items)}.")
        lines.append(f"{', '.join(items)} and other {plural} were mentioned.")
        if alt:
            lines.append(f"Critics liked {alt} including {en_list(items)}.")
            lines.append(f"There are {alt} such as {en_list(items)}.")
    for hyper, items in GROUPS_CHS:
        lines.append("、".join(items) + "等" + hyper + "都很有名。")
        lines.append("我们讨论了" + hyper + "(如" + "、".join(items) + ")。")
    lines.extend(FILLER_EN)
    # Repeated collocations so that PMI joins them as phrases.
    for _ in range(3):
        lines.append("The film festival opened last night.")
        lines.append("Fans of Captain Marvel gathered downtown.")
    return lines


# ---------------------------------------------------------------------------
# Embeddings: a topic direction per domain plus small hashed noise.

TOPICS = ["movie", "place", "person", "food", "org", "lang", "time", "misc"]


def topic_of_term(term):
    t = term.lower()
    for plural, alt, items in GROUPS_EN:
        if t in {i.lower() for i in items}:
            return {
                "movies": "movie", "books": "movie", "cities": "place",
                "countries": "place", "fruits": "food", "drinks": "food",
                "vegetables": "food", "companies": "org",
                "universities": "org", "actors": "person",
                "politicians": "person", "athletes": "person",
                "programming languages": "lang", "phones": "org",
                "cars": "org", "festivals": "time",
            }[plural]
    return None


EXTRA_TERMS = {
    "premiered": {"movie": 0.9, "time": 0.2},
    "premiere": {"movie": 0.9},
    "film": {"movie": 1.0},
    "movie": {"movie": 1.0},
    "theater": {"movie": 0.7, "place": 0.3},
    "watched": {"movie": 0.8},
    "actor": {"movie": 0.6, "person": 0.6},
    "was": {"misc": 0.5},
    "in": {"misc": 0.5, "place": 0.2},
    "months": {"time": 1.0},
    "ago": {"time": 1.0},
    "22": {"time": 0.5, "misc": 0.5},
    "city": {"place": 1.0},
    "born": {"person": 0.6, "place": 0.4},
    "eat": {"food": 1.0},
    "ate": {"food": 1.0},
    "delicious": {"food": 0.9},
    "sweet": {"food": 0.8},
    "fresh": {"food": 0.7},
    "juicy": {"food": 0.9},
    "bought": {"food": 0.4, "org": 0.3},
    "stock": {"org": 1.0},
    "shares": {"org": 0.9},
    "ceo": {"org": 0.9, "person": 0.3},
    "company": {"org": 1.0},
    "announced": {"org": 0.8},
    "released": {"org": 0.6, "movie": 0.3},
    "code": {"lang": 1.0},
    "programming": {"lang": 1.0},
    "wrote": {"lang": 0.5, "movie": 0.3},
    "speak": {"lang": 0.6, "person": 0.4},
    "big": {"misc": 1.0, "place": 0.1},
    "large": {"misc": 1.0, "place": 0.12},
}

# apple is both a fruit and a company.
MIXED = {"apple": {"food": 0.8, "org": 0.6}}


def noise(term, salt, scale):
    h = hashlib.sha256((salt + ":" + term).encode("utf-8")).digest()
    return [((h[i] / 255.0) - 0.5) * 2 * scale for i in range(len(TOPICS))]


def vector(term, salt):
    weights = {}
    if term in MIXED:
        weights = MIXED[term]
    elif term in EXTRA_TERMS:
        weights = EXTRA_TERMS[term]
    else:
        topic = topic_of_term(term)
        if topic:
            weights = {topic: 1.0}
    base = [weights.get(t, 0.0) for t in TOPICS]
    n = noise(term, salt, 0.08)
    return [round(b + e, 6) for b, e in zip(base, n)]


def embedding_terms():
    terms = []
    seen = set()
    for _, _, items in GROUPS_EN:
        for i in items:
            for w in [i.lower()] + i.lower().split():
                if w not in seen:
                    seen.add(w)
                    terms.append(w)
    for t in EXTRA_TERMS:
        if t not in seen:
            seen.add(t)
            terms.append(t)
    return terms


def write_embeddings(path, salt):
    terms = embedding_terms()
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"{len(terms)} {len(TOPICS)}\n")
        for t in terms:
            f.write(t + " " + " ".join(f"{x:.6f}" for x in vector(t, salt)) + "\n")


# ---------------------------------------------------------------------------
# Lexicon and synonyms.

def lexicon_terms():
    out = []
    for _, _, items in GROUPS_EN:
        out.extend(i for i in items if " " in i or "-" in i or i != i.lower())
    out.extend(["San Francisco", "programming languages"])
    for hyper, items in GROUPS_CHS:
        out.append(hyper)
        out.extend(items)
    out.extend(["上个月", "下个月", "明天", "后天", "昨天", "今天", "公斤",
                "我们", "讨论", "有名", "首映", "电影节"])
    seen, uniq = set(), []
    for t in out:
        if t not in seen:
            seen.add(t)
            uniq.append(t)
    return uniq


SYNONYMS = [
    ["big", "large", "huge"],
    ["small", "little", "tiny"],
    ["film", "movie"],
    ["buy", "purchase"],
    ["car", "automobile"],
    ["begin", "start"],
    ["电影", "影片"],
    ["开始", "起始"],
]


# ---------------------------------------------------------------------------
# Fixtures.

POS_LEXICON = {
    "He": "PRP", "She": "PRP", "They": "PRP", "We": "PRP", "I": "PRP",
    "it": "PRP",
    "stayed": "VBD", "lived": "VBD", "worked": "VBD", "arrived": "VBD",
    "saw": "VBD", "liked": "VBD", "bought": "VBD", "visited": "VBD",
    "in": "IN", "at": "IN", "from": "IN", "near": "IN", "with": "IN",
    "San": "NNP", "Francisco": "NNP", "Los": "NNP", "Angeles": "NNP",
    "Paris": "NNP", "London": "NNP", "Tokyo": "NNP", "Boston": "NNP",
    "Mary": "NNP", "John": "NNP",
    "the": "DT", "a": "DT", "this": "DT",
    "movie": "NN", "book": "NN", "car": "NN", "city": "NN", "house": "NN",
    "apple": "NN", "phone": "NN", "park": "NN",
    "movies": "NNS", "books": "NNS", "apples": "NNS", "friends": "NNS",
    "new": "JJ", "old": "JJ", "big": "JJ", "red": "JJ", "small": "JJ",
    "yesterday": "NN", "today": "NN",
    "and": "CC",
    "quickly": "RB", "often": "RB",
    ".": ".", ",": ",",
    "two": "CD", "three": "CD", "5": "CD", "22": "CD", "10": "CD",
    "Star": "NNP", "Wars": "NNP", "Iron": "NNP", "Man": "NNP", "Top": "NNP",
    "Gun": "NNP", "was": "VBD", "premiered": "VBN", "released": "VBN",
    "filmed": "VBN", "months": "NNS", "years": "NNS", "weeks": "NNS",
    "ago": "RB",
}

SUBJ = ["He", "She", "They", "We", "I", "Mary", "John"]
VERB_LOC = ["stayed", "lived", "worked", "arrived"]
PREP = ["in", "at", "near", "from"]
PLACE = [["San", "Francisco"], ["Los", "Angeles"], ["Paris"], ["London"],
         ["Tokyo"], ["Boston"]]
VERB_OBJ = ["saw", "liked", "bought", "visited"]
DET = ["the", "a", "this"]
ADJ = ["new", "old", "big", "red", "small"]
NOUN = ["movie", "book", "car", "city", "house", "apple", "phone", "park"]
TITLE = [["Star", "Wars"], ["Iron", "Man"], ["Top", "Gun"]]
VBN = ["premiered", "released", "filmed"]
NUM = ["two", "three", "5", "22", "10"]
UNIT = ["months", "years", "weeks"]


def pos_sentences():
    sents = [["He", "stayed", "in", "San", "Francisco", "."]]
    k = 0
    while len(sents) < 50:
        s = SUBJ[k % len(SUBJ)]
        if k % 4 == 3:
            sent = TITLE[k % 3] + ["was", VBN[(k // 4) % 3], "in"] + \
                PLACE[(k + 1) % len(PLACE)] + \
                [NUM[k % 5], UNIT[(k // 3) % 3], "ago", "."]
        elif k % 3 == 0:
            sent = [s, VERB_LOC[k % 4], PREP[(k // 2) % 4]] + \
                PLACE[k % len(PLACE)] + ["."]
        elif k % 3 == 1:
            sent = [s, VERB_OBJ[k % 4], DET[k % 3], ADJ[k % 5],
                    NOUN[k % len(NOUN)], "."]
        else:
            sent = [s, VERB_OBJ[(k + 1) % 4], DET[(k + 1) % 3],
                    NOUN[(k + 3) % len(NOUN)], "in",
                    *PLACE[(k + 2) % len(PLACE)], "yesterday", "."]
        sents.append(sent)
        k += 1
    return [[(w, POS_LEXICON[w]) for w in s] for s in sents]


CTB_SENTENCES = [
    [("我", "PN"), ("喜欢", "VV"), ("苹果", "NN"), ("。", "PU")],
    [("他", "PN"), ("住", "VV"), ("在", "P"), ("北京", "NR"), ("。", "PU")],
    [("我们", "PN"), ("讨论", "VV"), ("电影", "NN"), ("。", "PU")],
    [("她", "PN"), ("去", "VV"), ("上海", "NR"), ("了", "AS"), ("。", "PU")],
    [("腾讯", "NR"), ("是", "VC"), ("公司", "NN"), ("。", "PU")],
    [("他", "PN"), ("喜欢", "VV"), ("香蕉", "NN"), ("。", "PU")],
    [("我", "PN"), ("住", "VV"), ("在", "P"), ("上海", "NR"), ("。", "PU")],
    [("她", "PN"), ("讨论", "VV"), ("水果", "NN"), ("。", "PU")],
]

NER_SENTENCES = [
    [("Captain", "O"), ("Marvel", "O"), ("was", "O"), ("premiered", "O"),
     ("in", "O"), ("Los", "B-loc.generic"), ("Angeles", "I-loc.generic"),
     ("22", "O"), ("months", "O"), ("ago", "O"), (".", "O")],
    [("Barack", "B-person.generic"), ("Obama", "I-person.generic"),
     ("visited", "O"), ("Paris", "B-loc.generic"), ("yesterday", "O"),
     (".", "O")],
    [("Google", "B-org.generic"), ("opened", "O"), ("an", "O"),
     ("office", "O"), ("in", "O"), ("Tokyo", "B-loc.generic"), (".", "O")],
    [("Tom", "B-person.generic"), ("Hanks", "I-person.generic"),
     ("lives", "O"), ("in", "O"), ("New", "B-loc.generic"),
     ("York", "I-loc.generic"), (".", "O")],
    [("Microsoft", "B-org.generic"), ("hired", "O"), ("Angela", "B-person.generic"),
     ("Merkel", "I-person.generic"), (".", "O")],
    [("She", "O"), ("watched", "O"), ("Captain", "O"), ("Marvel", "O"),
     ("in", "O"), ("London", "B-loc.generic"), ("last", "O"), ("year", "O"),
     (".", "O")],
    [("Tencent", "B-org.generic"), ("is", "O"), ("based", "O"), ("in", "O"),
     ("Shenzhen", "B-loc.generic"), (".", "O")],
    [("Lionel", "B-person.generic"), ("Messi", "I-person.generic"),
     ("played", "O"), ("in", "O"), ("Barcelona", "B-loc.generic"),
     (".", "O")],
    [("The", "O"), ("United", "B-org.generic"), ("Nations", "I-org.generic"),
     ("met", "O"), ("in", "O"), ("Geneva", "B-loc.generic"), (".", "O")],
    [("Brie", "B-person.generic"), ("Larson", "I-person.generic"),
     ("works", "O"), ("for", "O"), ("Amazon", "B-org.generic"), (".", "O")],
]


def write_columns(path, sentences):
    with open(path, "w", encoding="utf-8") as f:
        for i, s in enumerate(sentences):
            if i:
                f.write("\n")
            for w, t in s:
                f.write(f"{w}\t{t}\n")


# Gold/pred pairs for the entity metric: one document per line.
F1_GOLD = [
    {"doc": "d1", "entity_list": [
        {"hit": [0, 14], "type": "work.movie"},
        {"hit": [32, 11], "type": "loc.city"}]},
    {"doc": "d2", "entity_list": [
        {"hit": [0, 5], "type": "org.company"},
        {"hit": [10, 5], "type": "food.fruit"}]},
]
F1_PRED = [
    {"doc": "d1", "entity_list": [
        {"hit": [0, 14], "type": {"name": "work.movie"}},
        {"hit": [32, 11], "type": {"name": "loc.generic"}}]},
    {"doc": "d2", "entity_list": [
        {"hit": [0, 5], "type": "person.generic"},
        {"hit": [9, 6], "type": "food.fruit"}]},
]


def write_jsonl(path, rows):
    with open(path, "w", encoding="utf-8") as f:
        for r in rows:
            f.write(json.dumps(r, ensure_ascii=False, sort_keys=True) + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--root", default=os.path.join(os.path.dirname(__file__), ".."))
    args = ap.parse_args()
    toy = os.path.join(args.root, "models", "toy")
    data = os.path.join(args.root, "tests", "data")
    os.makedirs(toy, exist_ok=True)
    os.makedirs(data, exist_ok=True)

    write_jsonl(os.path.join(toy, "ontology.jsonl"), ontology_rows())
    with open(os.path.join(toy, "corpus.txt"), "w", encoding="utf-8") as f:
        f.write("\n".join(corpus_lines()) + "\n")
    write_embeddings(os.path.join(toy, "embeddings.in.txt"), "in")
    write_embeddings(os.path.join(toy, "embeddings.out.txt"), "out")
    with open(os.path.join(toy, "lexicon.txt"), "w", encoding="utf-8") as f:
        f.write("\n".join(lexicon_terms()) + "\n")
    with open(os.path.join(toy, "synonyms.tsv"), "w", encoding="utf-8") as f:
        f.write("# one synonym group per line\n")
        for g in SYNONYMS:
            f.write("\t".join(g) + "\n")

    write_columns(os.path.join(data, "pos_ptb.tsv"), pos_sentences())
    write_columns(os.path.join(data, "pos_ctb.tsv"), CTB_SENTENCES)
    write_columns(os.path.join(data, "ner_bio.tsv"), NER_SENTENCES)
    write_jsonl(os.path.join(data, "f1_gold.jsonl"), F1_GOLD)
    write_jsonl(os.path.join(data, "f1_pred.jsonl"), F1_PRED)


if __name__ == "__main__":
    main()
