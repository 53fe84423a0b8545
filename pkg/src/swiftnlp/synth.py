"""Seeded generator for newswire-like annotated text.

Licensed treebanks are not shipped, so the accuracy fixtures and the
default resources come from a small probabilistic grammar. It emits
tokens with gold PTB tags and CoNLL-style NER labels, and renders each
sentence back to raw text that the tokenizer splits into the same tokens.

The grammar deliberately contains the ambiguities that make tagging and
entity typing hard: function words with several roles (``that``,
``more``, ``'s``), noun/verb homographs, clubs named after cities,
organisations named after places, conjunctions and numbers inside names,
capitalised headlines, and words never seen in training.

Run ``python -m swiftnlp.synth --help`` to regenerate the shipped files.
"""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass
from pathlib import Path

from .tokenizer import default_abbreviations

Tok = tuple[str, str, str]  # word, POS, NER


def _w(text: str) -> list[str]:
    return text.split()


FIRST = _w("""James John Robert Michael William David Richard Joseph Thomas Charles
    Mary Patricia Jennifer Linda Elizabeth Barbara Susan Sarah Helmut Jacques Boris
    Nelson Yasser Gerhard Lionel Romano Jose Carlos Pedro Ahmed Hans Pierre Giovanni
    Ivan Olga Anna Maria Peter Paul Mark Steven Andrew Laura Emma Alan Tony Gordon
    Kofi Bill Hillary Newt Jean Benjamin Shimon Hosni Viktor Leonid Klaus Franz
    Miguel Juan Luis Fernando Ricardo Akira Kenji Hiroshi Chen Wei Raj Sunil Omar""")
LAST = _w("""Smith Johnson Williams Brown Jones Miller Davis Garcia Wilson Anderson
    Taylor Moore Martin Jackson Thompson Harris Clark Lewis Walker Hall Allen Young
    Wright Scott Green Baker Adams Hill Campbell Mitchell Roberts Carter Phillips
    Evans Turner Torres Parker Collins Edwards Stewart Morris Murphy Cook Rogers
    Kohl Chirac Yeltsin Mandela Arafat Major Blair Clinton Dole Gore Netanyahu Peres
    Mubarak Schroeder Jospin Prodi Aznar Annan Lebed Chernomyrdin Kinkel Dini
    Hashimoto Tanaka Suzuki Mueller Schmidt Fischer Weber Rossi Bianchi Dubois
    Moreau Lefebvre Ivanov Petrov Novak Kowalski Nagy Silva Santos Pereira Gonzalez
    Rodriguez Lopez Fernandez Sharma Patel Khan Hussein Ibrahim""")
CITIES = _w("""London Paris Berlin Moscow Tokyo Beijing Washington Chicago Boston
    Houston Sydney Toronto Madrid Rome Bonn Brussels Geneva Zurich Vienna Prague
    Warsaw Budapest Athens Cairo Jerusalem Baghdad Tehran Bombay Seoul Manila
    Jakarta Bangkok Singapore Lagos Nairobi Johannesburg Lima Bogota Caracas Havana
    Dublin Edinburgh Manchester Liverpool Glasgow Milan Munich Frankfurt Hamburg Lyon
    Marseille Barcelona Lisbon Oslo Stockholm Helsinki Copenhagen Amsterdam Rotterdam
    Denver Dallas Atlanta Miami Seattle Detroit Montreal Vancouver Melbourne Perth
    Kiev Minsk Belgrade Sarajevo Zagreb Bucharest Sofia Ankara Istanbul Damascus
    Beirut Amman Riyadh Kabul Karachi Lahore Dhaka Hanoi Osaka Nagoya""")
MULTI_CITIES = ["New York", "Los Angeles", "San Francisco", "Hong Kong", "New Delhi",
                "Buenos Aires", "Rio de Janeiro", "Sao Paulo", "Tel Aviv", "Kuala Lumpur",
                "Cape Town", "Mexico City", "Las Vegas", "New Orleans"]
COUNTRIES = _w("""Britain England France Germany Russia Japan China Italy Spain Israel
    Iraq Iran Egypt India Pakistan Brazil Mexico Canada Australia Poland Sweden Norway
    Turkey Greece Jordan Syria Lebanon Kenya Nigeria Argentina Chile Peru Cuba Korea
    Vietnam Indonesia Ireland Scotland Wales Belgium Austria Switzerland Portugal
    Hungary Romania Ukraine Bosnia Croatia Serbia Albania Algeria Morocco Libya
    Sudan Ethiopia Zaire Angola Zimbabwe Taiwan Thailand Malaysia Colombia Venezuela
    Europe Asia Africa""")
MULTI_COUNTRIES = ["United States", "South Africa", "Saudi Arabia", "New Zealand",
                   "Sri Lanka", "Czech Republic", "West Bank", "Middle East", "Gaza Strip",
                   "North Korea", "Latin America"]
DEMONYMS = _w("""American British French German Japanese Russian Chinese Israeli
    Palestinian Iraqi European Dutch Italian Spanish Swiss Canadian Australian
    Mexican Brazilian Polish Swedish Turkish Greek Iranian Egyptian Indian
    Pakistani Korean Irish Scottish Belgian Austrian Norwegian Danish Finnish
    Hungarian Romanian Ukrainian Serbian Croatian Bosnian Kenyan Nigerian
    Argentine Chilean Cuban Arab Asian African Western""")
COMPANY_STEMS = _w("""Ford Chrysler Boeing Microsoft Apple IBM Intel Nissan Toyota Siemens
    Philips Nestle Shell Exxon Mobil Texaco Unilever Reuters Barclays Citicorp
    Daimler Volvo Fiat Renault Honda Sony Hitachi Nokia Ericsson Alcatel Bayer
    Hoechst Glaxo Pfizer Merck Kodak Xerox Compaq Motorola Lucent Novell Oracle
    Alcoa Caterpillar Boots Tesco Sainsbury Hanson Pearson Rolls Lonrho Amoco
    Chevron Conoco Unocal Kmart Sears Chase Fleet Allianz Generali Olivetti Pirelli""")
COMPANY_SUFFIX = [("Corp.", "NNP"), ("Inc.", "NNP"), ("Co.", "NNP"), ("Ltd", "NNP"),
                  ("Group", "NNP"), ("Holdings", "NNPS"), ("Bank", "NNP"), ("Motors", "NNPS"),
                  ("Airlines", "NNPS"), ("Industries", "NNPS"), ("Securities", "NNPS")]
FIXED_ORGS = ["United Nations", "European Union", "General Motors", "General Electric",
              "British Airways", "Air France", "Deutsche Bank", "Bank of England",
              "Bank of Japan", "Bank of France", "Bank of Canada", "Chicago Tribune",
              "Boston Globe", "New York Times", "Washington Post", "Wall Street Journal",
              "Columbia", "Columbia University", "Harvard", "NATO", "OPEC", "Congress",
              "Senate", "Labour", "Conservative Party", "Democratic Party",
              "Republican Party", "Red Cross", "World Bank", "Supreme Court",
              "Federal Reserve", "Interior Ministry", "Foreign Ministry", "Reuters",
              "Procter and Gamble", "Marks and Spencer", "Johnson and Johnson",
              "Group 4", "Channel 4", "Formula One"]
CLUBS = ["Manchester United", "Liverpool", "Arsenal", "Chelsea", "Barcelona",
         "Real Madrid", "Bayern Munich", "Ajax", "Juventus", "Chicago", "Boston",
         "Houston", "Denver", "Dallas", "Atlanta", "Seattle", "Detroit", "Montreal",
         "Toronto", "Milan", "Lyon", "Marseille", "Celtic", "Rangers", "Everton",
         "Leeds", "Porto", "Benfica", "Feyenoord", "Monaco"]
EVENTS = ["World Cup", "Olympics", "Olympic Games", "Euro 96", "Tour de France",
          "Nobel Prize", "Grand Prix", "Super Bowl", "Davis Cup", "Christmas",
          "Ramadan", "Wimbledon", "Cold War", "Gulf War", "Internet"]
TITLES = _w("""President Minister Chairman Director Senator Governor Ambassador
    Secretary General Spokesman Judge Coach Captain Professor Commissioner""")
DAYS = _w("Monday Tuesday Wednesday Thursday Friday Saturday Sunday")
MONTHS = _w("January February March April June July August September October November December")
HEADWORDS = _w("""RESULTS STANDINGS DIVISION CONFERENCE SUMMARIES SCORES TABLE FIXTURES
    REPORT PREVIEW ROUNDUP FINAL LEAGUE CHAMPIONSHIP DEBT MARKETS PRICES TRADE
    TALKS ELECTION STRIKE VOTE BUDGET RATES BONDS STOCKS SHARES PROFIT LOSS
    OUTLOOK FORECAST CRISIS DEAL MERGER BID TRIAL SUMMIT PEACE WAR CLASH
    PROTEST RALLY CRASH FIRE FLOOD STORM""")
SPORTS_UP = _w("SOCCER TENNIS GOLF CRICKET RUGBY BASEBALL BASKETBALL CYCLING ATHLETICS BOXING")

NOUNS = _w("""company government market deal agreement bank economy report official
    minister price rate profit loss share stock index dollar currency election
    vote campaign party leader president spokesman statement proposal decision
    talk meeting conference summit contract order quarter year month week day
    team match game season player coach goal title championship court trial
    case police army attack ceasefire border region country city capital
    budget tax debt bond yield analyst investor trader output growth demand
    industry sector firm group unit plant factory project plan offer cut rise
    increase drop fall record lead""")
NOUNS_PL = _w("""companies governments markets deals banks officials ministers prices
    rates profits losses shares stocks analysts investors traders players teams
    matches games elections votes talks leaders troops police workers sales
    results reports plans offers cuts rises increases claims calls""")
VERBS_PAST = _w("""said reported announced rejected accepted criticised approved
    signed won lost beat raised lowered cut set rose fell gained dropped closed
    opened ended expected called told warned agreed denied confirmed visited
    arrived left met sold bought named elected""")
VERBS_BASE = _w("""cut raise lower offer plan report increase sell buy sign win meet
    visit announce approve reject accept end open close set drop call""")
ADJS = _w("""new big small high low strong weak major senior foreign national local
    economic political military financial early late final last next first
    second third key top main open close firm""")
ADVS = _w("quickly sharply slightly heavily strongly recently later also still already")

# Stems for made-up words: the training split only sees some of them.
_SYL1 = _w("bl qu fr gr tr pl st cr dr sk pr gl sn br fl")
_SYL2 = _w("or an el ix um ov ar en ul ash")
_SYL3 = _w("f z nd rk mp t g sh v x")


def _pseudo_stems() -> list[str]:
    return [a + b + c for a in _SYL1 for b in _SYL2 for c in _SYL3]


def _split(pool: list, train: bool, keep: float = 0.8) -> list:
    cut = max(1, int(len(pool) * keep))
    return pool[:cut] if train else pool


@dataclass
class SynthSentence:
    tokens: list[str]
    pos: list[str]
    ner: list[str]

    @property
    def text(self) -> str:
        return detokenize(self.tokens)


_NO_SPACE_BEFORE = {".", ",", "'s", "n't", "%", ")", "''", ":", "?", "!", ";", "'re", "'ve", "'ll", "'m", "'d"}
_NO_SPACE_AFTER = {"(", "``", "$"}


def detokenize(tokens: list[str]) -> str:
    """Raw text that tokenizes back to ``tokens``."""
    abbreviations = default_abbreviations()
    out = []
    prev = None
    for tok in tokens:
        raw = '"' if tok in ("``", "''") else tok
        if prev is None:
            out.append(raw)
        elif tok == "." and (prev.endswith(".") or prev + "." in abbreviations
                             or (len(prev) == 1 and prev.isalpha())):
            out.append(" " + raw)
        elif tok in _NO_SPACE_BEFORE or prev in _NO_SPACE_AFTER:
            out.append(raw)
        else:
            out.append(" " + raw)
        prev = tok
    return "".join(out)


class Generator:
    """Draw annotated sentences. ``train=True`` restricts open-class pools."""

    def __init__(self, seed: int = 0, train: bool = True):
        self.rng = random.Random(seed)
        self.train = train
        stems = _pseudo_stems()
        random.Random(1234).shuffle(stems)
        stems = _split(stems, train, 0.6)
        self.unk_nouns = [s + suf for s in stems for suf in ("ment", "tion")][:len(stems)]
        self.unk_plural = [s + "ers" for s in stems]
        self.unk_verbs = [s + "ed" for s in stems]
        self.unk_gerunds = [s + "ing" for s in stems]
        self.unk_adjs = [s + suf for s, suf in zip(stems, ["ive", "al", "ous"] * len(stems))]
        self.unk_advs = [s + "ly" for s in stems]
        self.unk_names = [s.capitalize() + suf for s, suf in zip(stems, ["son", "ov", "ez", "ini", "berg"] * len(stems))]
        self.first = _split(FIRST, train)
        self.last = _split(LAST, train)
        self.cities = _split(CITIES, train, 0.85)
        self.companies = _split(COMPANY_STEMS, train, 0.85)
        self.headwords = _split(HEADWORDS, train, 0.5)
        self.templates = [
            (12, self.t_report), (10, self.t_said_that), (4, self.t_that_det),
            (5, self.t_relative), (5, self.t_more), (8, self.t_noun_verb),
            (7, self.t_modal), (6, self.t_location), (6, self.t_sports),
            (3, self.t_scores), (5, self.t_headline), (5, self.t_quote),
            (4, self.t_possessive), (4, self.t_contraction), (3, self.t_like),
            (3, self.t_particle), (3, self.t_about), (3, self.t_there),
            (4, self.t_title), (4, self.t_bank), (3, self.t_event),
            (3, self.t_unknown),
        ]
        self._weights = [w for w, _ in self.templates]

    # -- small helpers --------------------------------------------------------

    def pick(self, seq):
        return self.rng.choice(seq)

    def chance(self, p: float) -> bool:
        return self.rng.random() < p

    @staticmethod
    def o(word: str, tag: str) -> Tok:
        return (word, tag, "O")

    @staticmethod
    def ent(words: list[str], etype: str, tags: list[str] | None = None) -> list[Tok]:
        # the first word carries a start mark, resolved to I-/B- in sentence()
        tags = tags or ["NNP"] * len(words)
        return [(w, t, ("S-" if i == 0 else "I-") + etype) for i, (w, t) in enumerate(zip(words, tags))]

    def _name_tags(self, words: list[str]) -> list[str]:
        return ["IN" if w == "of" else "CC" if w == "and" else "FW" if w == "de"
                else "CD" if w[0].isdigit() else "NNP" for w in words]

    # -- entities -----------------------------------------------------------

    def person(self, full: float = 0.6) -> list[Tok]:
        if self.chance(0.08):
            return self.ent([self.pick(self.unk_names)], "PER")
        if self.chance(full):
            return self.ent([self.pick(self.first), self.pick(self.last)], "PER")
        return self.ent([self.pick(self.last)], "PER")

    def location(self) -> list[Tok]:
        r = self.rng.random()
        if r < 0.45:
            name = self.pick(self.cities)
        elif r < 0.6:
            name = self.pick(MULTI_CITIES)
        elif r < 0.9:
            name = self.pick(COUNTRIES)
        else:
            name = self.pick(MULTI_COUNTRIES)
        words = name.split()
        return self.ent(words, "LOC", self._name_tags(words))

    def organisation(self) -> list[Tok]:
        r = self.rng.random()
        if r < 0.5:
            words = [self.pick(self.companies)]
            tags = ["NNP"]
            if self.chance(0.6):
                suffix, tag = self.pick(COMPANY_SUFFIX)
                words.append(suffix)
                tags.append(tag)
            return self.ent(words, "ORG", tags)
        if r < 0.6:
            words = [self.pick(self.cities), self.pick(["Bank", "Tribune", "Times", "Telecom", "Airport"])]
            return self.ent(words, "ORG")
        words = self.pick(FIXED_ORGS).split()
        return self.ent(words, "ORG", self._name_tags(words))

    def misc(self) -> list[Tok]:
        words = self.pick(EVENTS).split()
        return self.ent(words, "MISC", self._name_tags(words))

    def demonym(self) -> list[Tok]:
        return self.ent([self.pick(DEMONYMS)], "MISC", ["JJ"])

    # -- phrases --------------------------------------------------------------

    def np_common(self, plural: bool | None = None) -> list[Tok]:
        if plural is None:
            plural = self.chance(0.35)
        out: list[Tok] = []
        if plural:
            if self.chance(0.4):
                out.append(self.o("the", "DT"))
        else:
            det = self.pick(["the", "the", "a", "its", "their"])
            out.append(self.o(det, "PRP$" if det in ("its", "their") else "DT"))
        if self.chance(0.3):
            out.append(self.o(self.pick(ADJS), "JJ"))
        elif self.chance(0.08):
            out.append(self.o(self.pick(self.unk_adjs), "JJ"))
        elif self.chance(0.12):
            out += self.demonym()
        if plural:
            if self.chance(0.06):
                out.append(self.o(self.pick(self.unk_plural), "NNS"))
            else:
                out.append(self.o(self.pick(NOUNS_PL), "NNS"))
        else:
            if self.chance(0.06):
                out.append(self.o(self.pick(self.unk_nouns), "NN"))
            else:
                out.append(self.o(self.pick(NOUNS), "NN"))
        if out[0][0] == "a" and out[1][0][0] in "aeiouAEIOU":
            out[0] = self.o("an", "DT")
        return out

    def subject(self) -> tuple[list[Tok], bool]:
        """A subject phrase and whether it is singular."""
        r = self.rng.random()
        if r < 0.25:
            return self.person(), True
        if r < 0.4:
            return self.organisation(), True
        if r < 0.48:
            return self.location(), True
        if r < 0.62:
            w = self.pick(["he", "she", "it", "they", "we"])
            return [self.o(w, "PRP")], w in ("he", "she", "it")
        plural = self.chance(0.4)
        return self.np_common(plural), not plural

    def obj(self) -> list[Tok]:
        r = self.rng.random()
        if r < 0.5:
            return self.np_common()
        if r < 0.65:
            return self.organisation()
        if r < 0.75:
            return self.person()
        if r < 0.85:
            return self.location()
        return self.amount()

    def amount(self) -> list[Tok]:
        if self.chance(0.5):
            return [self.o(str(self.rng.randint(2, 40)), "CD"), self.o(self.pick(["percent", "%"]), "NN")]
        n = f"{self.rng.randint(1, 900)}"
        if self.chance(0.3):
            n += f".{self.rng.randint(1, 9)}"
        return [self.o("$", "$"), self.o(n, "CD"), self.o(self.pick(["million", "billion"]), "CD")]

    def date(self) -> list[Tok]:
        if self.chance(0.6):
            return [self.o("on", "IN"), self.o(self.pick(DAYS), "NNP")]
        if self.chance(0.5):
            return [self.o("in", "IN"), self.o(self.pick(MONTHS), "NNP")]
        return [self.o("last", "JJ"), self.o(self.pick(["week", "month", "year"]), "NN")]

    def pp(self) -> list[Tok]:
        r = self.rng.random()
        if r < 0.4:
            return [self.o("in", "IN")] + self.location()
        if r < 0.7:
            return self.date()
        if r < 0.85:
            return [self.o(self.pick(["for", "with", "from"]), "IN")] + self.obj()
        return [self.o("at", "IN")] + self.organisation()

    def be(self) -> Tok:
        return self.pick([self.o("was", "VBD"), self.o("is", "VBZ")])

    def verb_past(self) -> Tok:
        if self.chance(0.05):
            return self.o(self.pick(self.unk_verbs), "VBD")
        return self.o(self.pick(VERBS_PAST), "VBD")

    def clause(self) -> list[Tok]:
        subj, _ = self.subject()
        out = subj + [self.verb_past()] + self.obj()
        if self.chance(0.4):
            out += self.pp()
        return out

    # -- templates -------------------------------------------------------

    def t_report(self):
        out = self.clause()
        if self.chance(0.3):
            out += self.pp()
        return out

    def t_said_that(self):
        subj, _ = self.subject()
        verb = self.pick(["said", "said", "said", "believed", "argued", "warned", "added"])
        return subj + [self.o(verb, "VBD"), self.o("that", "IN")] + self.clause()

    def t_that_det(self):
        subj, _ = self.subject()
        noun = self.pick(["proposal", "decision", "plan", "offer", "agreement", "view"])
        r = self.rng.random()
        if r < 0.5:
            return subj + [self.verb_past(), self.o("that", "DT"), self.o(noun, "NN")] + self.pp()
        if r < 0.75:
            return [self.o("at", "IN"), self.o("that", "DT"), self.o("time", "NN"), self.o(",", ",")] + self.clause()
        return [self.o("in", "IN"), self.o("that", "DT"), self.o("case", "NN"), self.o(",", ",")] + self.clause()

    def t_relative(self):
        head = self.np_common(plural=False)
        rel = [self.o("that", "WDT"), self.verb_past()] + self.obj()
        return head + rel + [self.be(), self.o(self.pick(ADJS), "JJ")]

    def t_more(self):
        r = self.rng.random()
        subj, _ = self.subject()
        if r < 0.45:
            return subj + [self.verb_past(), self.o("more", "JJR"), self.o(self.pick(NOUNS_PL), "NNS"),
                           self.o("than", "IN"), self.o("expected", "VBN")]
        if r < 0.8:
            verb = self.o(self.pick(["became", "looked", "seemed"]), "VBD")
            return subj + [verb, self.o("more", "RBR"), self.o(self.pick(["expensive", "difficult", "likely",
                                                                         "important", "cautious"]), "JJ")]
        return subj + [self.verb_past(), self.o("more", "JJR"), self.o("than", "IN"),
                       self.o(str(self.rng.randint(2, 500)), "CD"), self.o(self.pick(NOUNS_PL), "NNS")]

    def t_noun_verb(self):
        noun = self.pick(["plans", "cuts", "offers", "calls", "claims", "reports", "increases"])
        if self.chance(0.5):
            subj = self.organisation() if self.chance(0.6) else self.person()
            return subj + [self.o(noun, "VBZ"), self.o("to", "TO"), self.o(self.pick(VERBS_BASE), "VB")] + self.obj()
        det = self.pick(["its", "their", "the"])
        head = [self.o(det, "PRP$" if det != "the" else "DT")]
        if self.chance(0.3):
            head.append(self.o(self.pick(["new", "recent", "latest"]), "JJ"))
        head.append(self.o(noun, "NNS"))
        return head + [self.pick([self.o("were", "VBD"), self.o("are", "VBP")]), self.o(self.pick(
            ["criticised", "welcomed", "delayed", "rejected"]), "VBN")] + self.pp()

    def t_modal(self):
        subj, singular = self.subject()
        r = self.rng.random()
        verb = self.pick(VERBS_BASE)
        if r < 0.45:
            return subj + [self.o(self.pick(["will", "would", "could", "may"]), "MD"), self.o(verb, "VB")] + self.obj()
        if r < 0.7:
            return subj + [self.verb_past(), self.o("to", "TO"), self.o(verb, "VB")] + self.obj()
        if r < 0.85:
            aux = self.o("has", "VBZ") if singular else self.o("have", "VBP")
            part = self.pick(["cut", "set", "raised", "lowered", "signed", "closed"])
            return subj + [aux, self.o(part, "VBN")] + self.obj()
        head = [self.o("a", "DT"), self.o(self.pick(["cut", "rise", "drop", "increase", "fall"]), "NN"),
                self.o("in", "IN")] + self.np_common(plural=self.chance(0.5))
        return head + [self.be(), self.o("expected", "VBN")]

    def t_location(self):
        subj, _ = self.subject()
        verb = self.pick([("arrived", "VBD"), ("visited", "VBD"), ("met", "VBD")])
        if verb[0] == "arrived":
            out = subj + [self.o(*verb), self.o("in", "IN")] + self.location()
        else:
            out = subj + [self.o(*verb)] + (self.person() if self.chance(0.4) else self.location())
        if self.chance(0.6):
            out += self.date()
        return out

    def club(self) -> list[Tok]:
        # any city can field a team, so club names overlap with places
        words = (self.pick(self.cities) if self.chance(0.3) else self.pick(CLUBS)).split()
        return self.ent(words, "ORG")

    def t_sports(self):
        a, b = self.club(), self.club()
        score = f"{self.rng.randint(0, 5)}-{self.rng.randint(0, 5)}"
        verb = self.pick([("beat", "VBD"), ("drew", "VBD"), ("lost", "VBD")])
        out = a + [self.o(*verb)]
        if verb[0] in ("drew", "lost"):
            out.append(self.o("with" if verb[0] == "drew" else "to", "IN" if verb[0] == "drew" else "TO"))
        out += b + [self.o(score, "CD")]
        if self.chance(0.5):
            out += [self.o("in", "IN"), self.o("the", "DT")] + self.ent(
                [self.pick(["Premier", "Champions", "National", "Eastern"]), "League"], "MISC")
        elif self.chance(0.5):
            out += self.date()
        return out

    def t_scores(self):
        a, b = self.club(), self.club()
        return a + [self.o(str(self.rng.randint(0, 6)), "CD")] + b + [self.o(str(self.rng.randint(0, 6)), "CD")]

    def t_headline(self):
        out = [self.o(self.pick(SPORTS_UP), "NN"), self.o("-", ":")]
        if self.chance(0.35):
            words = [self.pick(DEMONYMS).upper()]
            out += self.ent(words, "MISC", ["JJ"])
        for _ in range(self.rng.randint(1, 2)):
            w = self.pick(self.headwords)
            out.append(self.o(w, "NNS" if w.endswith("S") and w not in ("LOSS", "PRESS", "CRISIS") else "NN"))
        if self.chance(0.3):
            out += [self.o(self.pick(["Women", "Men"]), "NNP"), self.o("'s", "POS"), self.o(self.pick(["singles", "final", "race"]), "NN")]
        return out

    def t_quote(self):
        inner = self.clause()
        out = [self.o("``", "``")] + inner + [self.o(",", ","), self.o("''", "''"), self.o("said", "VBD")]
        out += self.person()
        if self.chance(0.6):
            det = len(out) + 1
            out += [self.o(",", ","), self.o("a", "DT")]
            if self.chance(0.5):
                out += self.demonym()
            out += [self.o(self.pick(["official", "spokesman", "analyst", "minister"]), "NN"),
                    self.o("at", "IN")] + self.organisation()
            if out[det + 1][0][0] in "aeiouAEIOU":
                out[det] = self.o("an", "DT")
        return out

    def t_possessive(self):
        owner = self.organisation() if self.chance(0.6) else self.person()
        noun = self.pick(["profit", "shares", "sales", "chairman", "offer", "stake", "plans"])
        tag = "NNS" if noun in ("shares", "sales", "plans") else "NN"
        out = owner + [self.o("'s", "POS"), self.o(noun, tag)]
        verb = self.pick([("rose", "VBD"), ("fell", "VBD"), ("jumped", "VBD"), ("slipped", "VBD")])
        return out + [self.o(*verb)] + self.amount()

    def t_contraction(self):
        r = self.rng.random()
        if r < 0.4:
            subj = self.pick(["it", "he", "she"])
            return [self.o(subj, "PRP"), self.o("'s", "VBZ"), self.o(self.pick(ADJS), "JJ")] + self.pp()
        if r < 0.7:
            subj = self.pick(["we", "they", "I"])
            neg = self.pick([("do", "VBP"), ("ca", "MD"), ("wo", "MD")])
            return [self.o(subj, "PRP"), self.o(*neg), self.o("n't", "RB"), self.o(self.pick(VERBS_BASE), "VB")] + self.obj()
        owner = self.person(full=0.3)
        return owner + [self.o("'s", "VBZ"), self.o("not", "RB"), self.o(self.pick(ADJS), "JJ")]

    def t_like(self):
        r = self.rng.random()
        if r < 0.4:
            return [self.o(self.pick(["companies", "banks", "countries"]), "NNS"), self.o("like", "IN")] + \
                self.organisation() + [self.o(self.pick(["rose", "fell", "gained"]), "VBD")] + self.amount()
        if r < 0.7:
            return [self.o(self.pick(["they", "we"]), "PRP"), self.o("like", "VBP")] + self.np_common()
        subj, _ = self.subject()
        return subj + [self.o("would", "MD"), self.o("like", "VB"), self.o("to", "TO"),
                       self.o(self.pick(VERBS_BASE), "VB")] + self.obj()

    def t_particle(self):
        subj, _ = self.subject()
        r = self.rng.random()
        if r < 0.4:
            return subj + [self.o(self.pick(["picked", "set", "gave"]), "VBD"), self.o("up", "RP")] + self.np_common()
        if r < 0.7:
            return [self.o("prices", "NNS"), self.o(self.pick(["went", "moved"]), "VBD"),
                    self.o(self.pick(["up", "down"]), "RB")] + self.date()
        return subj + [self.o("walked", "VBD"), self.o(self.pick(["up", "down"]), "IN"), self.o("the", "DT"),
                       self.o(self.pick(["road", "street", "hill"]), "NN")]

    def t_about(self):
        subj, _ = self.subject()
        if self.chance(0.5):
            return subj + [self.verb_past(), self.o("about", "RB"), self.o(str(self.rng.randint(2, 90)), "CD"),
                           self.o("percent", "NN")]
        return subj + [self.o(self.pick(["talked", "spoke", "complained"]), "VBD"),
                       self.o("about", "IN")] + self.np_common()

    def t_there(self):
        if self.chance(0.6):
            return [self.o("there", "EX"), self.be()] + self.np_common(plural=False) + self.pp()
        subj, _ = self.subject()
        return subj + [self.o(self.pick(["went", "stayed"]), "VBD"), self.o("there", "RB")] + self.date()

    def t_title(self):
        title = self.pick(TITLES)
        r = self.rng.random()
        if r < 0.7:
            name = self.person(full=0.5)
            out = [self.o(title, "NNP")] + name
        elif r < 0.85:
            out = [self.o("Mr.", "NNP")] + self.ent([self.pick(self.last)], "PER")
        else:
            out = [self.o("Prime", "NNP"), self.o("Minister", "NNP")] + self.person()
        return out + [self.verb_past()] + self.obj()

    def t_bank(self):
        bank = self.ent(["Bank", "of", self.pick(["England", "Japan", "France", "Canada", "Italy", "Spain"])],
                        "ORG", ["NNP", "IN", "NNP"])
        out = [self.o("the", "DT")] + bank
        out += [self.o(self.pick(["raised", "cut", "held"]), "VBD"), self.o("interest", "NN"), self.o("rates", "NNS")]
        return out

    def t_event(self):
        subj, _ = self.subject()
        return subj + [self.o(self.pick(["won", "watched", "missed"]), "VBD"), self.o("the", "DT")] + self.misc()

    def t_unknown(self):
        subj, _ = self.subject()
        r = self.rng.random()
        if r < 0.5:
            return subj + [self.o(self.pick(self.unk_verbs), "VBD"), self.o(self.pick(self.unk_advs), "RB")] + self.pp()
        return subj + [self.o("was", "VBD"), self.o(self.pick(self.unk_gerunds), "VBG")] + self.np_common()

    # -- driver ---------------------------------------------------------------

    def sentence(self) -> SynthSentence:
        template = self.rng.choices(self.templates, weights=self._weights)[0][1]
        toks = template()
        if template not in (self.t_scores, self.t_headline):
            toks.append(self.o(".", "."))
        for i, (word, tag, label) in enumerate(toks):
            if word[:1].isalpha():
                if word[0].islower():
                    toks[i] = (word[0].upper() + word[1:], tag, label)
                break
        return SynthSentence([t[0] for t in toks], [t[1] for t in toks], _resolve_starts([t[2] for t in toks]))

    def sentences(self, n: int) -> list[SynthSentence]:
        return [self.sentence() for _ in range(n)]


def _resolve_starts(labels: list[str]) -> list[str]:
    """CoNLL-2003 style IOB: B- only where an entity directly follows one of the same type."""
    out = []
    for label in labels:
        if label.startswith("S-"):
            etype = label[2:]
            label = ("B-" if out and out[-1][2:] == etype else "I-") + etype
        out.append(label)
    return out


def write_conll(path, sentences: list[SynthSentence], ner: bool = True) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for s in sentences:
            for i, tok in enumerate(s.tokens):
                cols = [tok, s.pos[i]] + ([s.ner[i]] if ner else [])
                fh.write(" ".join(cols) + "\n")
            fh.write("\n")


def write_text(path, sentences: list[SynthSentence]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for s in sentences:
            fh.write(s.text + "\n")


TRAIN_SEED, POS_SEED, NER_SEED = 20130601, 20130602, 20130603


def generate_corpora(outdir, train: int = 12000, pos_test: int = 800, ner_test: int = 200) -> dict[str, Path]:
    """Write the training corpus and the two evaluation fixtures."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = {
        "train": outdir / "train.conll",
        "pos_test": outdir / "pos_test.conll",
        "ner_test": outdir / "ner_test.conll",
        "ner_text": outdir / "ner_test.txt",
    }
    write_conll(paths["train"], Generator(TRAIN_SEED, train=True).sentences(train))
    write_conll(paths["pos_test"], Generator(POS_SEED, train=False).sentences(pos_test), ner=False)
    ner_sents = Generator(NER_SEED, train=False).sentences(ner_test)
    write_conll(paths["ner_test"], ner_sents)
    write_text(paths["ner_text"], ner_sents)
    return paths


def bench_text(n_sentences: int = 4000, seed: int = 7) -> str:
    """Raw text, one paragraph of several sentences per line."""
    gen = Generator(seed, train=False)
    lines, para = [], []
    for s in gen.sentences(n_sentences):
        para.append(s.text)
        if len(para) == 5:
            lines.append(" ".join(para))
            para = []
    if para:
        lines.append(" ".join(para))
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="python -m swiftnlp.synth", description=__doc__.split("\n")[0])
    parser.add_argument("outdir", help="directory for train.conll and the test fixtures")
    parser.add_argument("--train", type=int, default=12000, help="training sentences")
    parser.add_argument("--pos-test", type=int, default=800, help="POS fixture sentences")
    parser.add_argument("--ner-test", type=int, default=200, help="NER fixture sentences")
    args = parser.parse_args(argv)
    for name, path in generate_corpora(args.outdir, args.train, args.pos_test, args.ner_test).items():
        print(f"{name}\t{path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
