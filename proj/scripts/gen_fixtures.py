#!/usr/bin/env python3
"""Regenerate the small synthetic fixtures under data/fixtures.

Output is fully determined by --seed; the committed files were produced with
the default.
"""
import argparse
import csv
import json
import random
from pathlib import Path

POSITIVE = ["love", "great", "happy", "awesome", "good", "wonderful", "proud", "win",
            "best", "excited", "thanks", "brilliant", "support", "hope", "strong"]
NEGATIVE = ["hate", "bad", "sad", "awful", "terrible", "worst", "angry", "lose",
            "corrupt", "fail", "disappointed", "tired", "lies", "shame", "broken"]
FILLER = ["today", "the", "this", "rally", "vote", "people", "speech", "day", "india",
          "news", "morning", "week", "campaign", "leader", "country", "again", "really"]

SARCASTIC = ["totally", "obviously", "genius", "sure", "clearly", "shocking", "wow",
             "nation", "finally", "area", "man", "local", "heroic", "bravely"]
LITERAL = ["report", "announces", "study", "officials", "says", "court", "government",
           "policy", "election", "budget", "minister", "data", "plans", "state"]
HEADLINE = ["new", "after", "for", "with", "over", "year", "city", "people", "first",
            "week", "public", "home", "school", "workers"]

BJP = ["bjp", "modi", "#bjp4india", "@narendramodi", "namo", "amitshah", "nda", "#modiji"]
INC = ["congress", "rahul", "@incindia", "#raga", "priyanka", "upa", "inc", "sonia"]


def sentence(rng, strong, weak, n_strong, n_filler):
    words = rng.sample(strong, n_strong) + rng.choices(weak, k=n_filler)
    rng.shuffle(words)
    return " ".join(words)


def decorate(rng, text):
    if rng.random() < 0.2:
        text = f"@user{rng.randrange(1000)} {text}"
    if rng.random() < 0.15:
        text += f" https://t.co/{rng.randrange(16**8):08x}"
    if rng.random() < 0.1:
        text = text.capitalize() + "!"
    if rng.random() < 0.05:
        text += ', "quoted, with comma"'
    return text


def sentiment_rows(rng, n):
    rows = []
    for i in range(n):
        positive = i % 2 == 0
        words = POSITIVE if positive else NEGATIVE
        text = decorate(rng, sentence(rng, words, FILLER, rng.randint(2, 3), rng.randint(3, 6)))
        rows.append({"target": 4 if positive else 0, "ids": 1467810000 + i,
                     "date": "Mon Apr 06 22:19:45 PDT 2009", "flag": "NO_QUERY",
                     "user": f"user{i}", "text": text})
    rng.shuffle(rows)
    return rows


def sarcasm_rows(rng, n, offset):
    rows = []
    for i in range(n):
        sarcastic = i % 2 == 1
        words = SARCASTIC if sarcastic else LITERAL
        rows.append({"article_link": f"https://example.org/a/{offset + i}",
                     "headline": sentence(rng, words, HEADLINE, rng.randint(2, 3),
                                          rng.randint(3, 6)),
                     "is_sarcastic": int(sarcastic)})
    rng.shuffle(rows)
    return rows


def corpus_rows(rng, n):
    rows = []
    for i in range(n):
        r = rng.random()
        mentions = []
        if r < 0.55:
            mentions = rng.sample(BJP, rng.randint(1, 2))
        elif r < 0.8:
            mentions = rng.sample(INC, rng.randint(1, 2))
        elif r < 0.88:
            mentions = [rng.choice(BJP), rng.choice(INC)]
        tone = POSITIVE if rng.random() < 0.6 else NEGATIVE
        body = sentence(rng, tone, FILLER, 2, rng.randint(2, 5)).split()
        if rng.random() < 0.2:
            body += rng.sample(SARCASTIC, 2)
        body += mentions
        rng.shuffle(body)
        text = decorate(rng, " ".join(body))
        if i == 7:
            text = ""  # one unusable row, skipped by the loader
        rows.append({"tweet_id": 1120000000000000000 + i,
                     "created_at": f"2019-04-{1 + i % 28:02d} {i % 24:02d}:00:00",
                     "full_text": text,
                     "quote_count": rng.randrange(5), "reply_count": rng.randrange(20),
                     "retweet_count": rng.randrange(100), "favorite_count": rng.randrange(300),
                     "last_updated": "2019-05-23 00:00:00"})
    return rows


def write_csv(path, rows):
    with path.open("w", newline="", encoding="utf-8") as f:
        w = csv.DictWriter(f, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)


def write_jsonl(path, rows):
    with path.open("w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row) + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=2019)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data" / "fixtures")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    args.out.mkdir(parents=True, exist_ok=True)
    write_csv(args.out / "sentiment.csv", sentiment_rows(rng, 200))
    write_jsonl(args.out / "sarcasm_train.jsonl", sarcasm_rows(rng, 200, 0))
    write_jsonl(args.out / "sarcasm_test.jsonl", sarcasm_rows(rng, 60, 200))
    write_csv(args.out / "election_tweets.csv", corpus_rows(rng, 500))


if __name__ == "__main__":
    main()
