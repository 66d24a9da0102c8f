"""Bundled seed corpora.

Two layers: a small hand-written smoking-ban dialog (the classic worked
example, with its main statement pinned at id 657 so its representative
URL is stable), and a larger deterministic synthetic corpus built on top
of it through the regular store operations. The synthetic corpus hits
exact aggregate targets — plain statements, edges, and statements reused
as a child more than once — so scale tests have fixed expectations.
"""

from __future__ import annotations

from socle.model import (
    MAX_TEXT_LEN,
    Form,
    Kind,
    Polarity,
    relation_text_negated,
    relation_text_normal,
)
from socle.store import CORPUS_SCHEMA_VERSION, Store

BASE_TS = 1_546_300_800_000  # fixed epoch ms origin for seed timestamps
TICK_MS = 60_000

SMOKING_MAIN_ID = 657

DEFAULT_PLAIN_STATEMENTS = 374
DEFAULT_EDGES = 371
DEFAULT_REUSED = 45

_SMOKING_PLAIN = {
    650: "Governments should defend freedom of choice of its citizens",
    651: "Smoking seriously harms the health of smokers",
    652: "Nicotine is an addictive drug",
    653: "Smokers cannot freely choose to smoke",
    654: "Second-hand smoke endangers bystanders",
    655: "Smoking bans reduce national healthcare costs",
    656: "Prohibition creates black markets",
    657: "Governments should ban smoking",
}

# (edge id, child, polarity against the parent's normal form, parent,
#  relation-statement id)
_SMOKING_EDGES = [
    (1, 650, Polarity.OPPOSE, 657, 658),
    (2, 651, Polarity.SUPPORT, 657, 659),
    (3, 654, Polarity.SUPPORT, 657, 660),
    (4, 655, Polarity.SUPPORT, 657, 661),
    (5, 656, Polarity.OPPOSE, 657, 662),
    (6, 652, Polarity.SUPPORT, 653, 663),
    (7, 653, Polarity.OPPOSE, 650, 664),
]

_SUBJECTS = [
    "Public libraries",
    "National parks",
    "Electric vehicles",
    "Wind farms",
    "Solar subsidies",
    "School uniforms",
    "Standardized tests",
    "Open-source licenses",
    "Congestion charges",
    "Plastic bag levies",
    "Remote work policies",
    "Four-day workweeks",
    "Universal basic income pilots",
    "Rent control measures",
    "High-speed rail projects",
    "Urban bike lanes",
    "Nuclear power plants",
    "Carbon border tariffs",
    "Municipal broadband networks",
    "Vertical farms",
    "Desalination plants",
    "Space tourism ventures",
    "Autonomous delivery drones",
    "Facial recognition systems",
    "Algorithmic credit scoring",
    "Synthetic meat products",
    "Deep-sea mining permits",
    "Gene-edited crops",
]

_PREDICATES = [
    "should receive more public funding",
    "deliver clear long-term savings",
    "create more jobs than they displace",
    "reduce regional inequality",
    "impose hidden costs on consumers",
    "strengthen local communities",
    "erode personal privacy",
    "depend on unproven technology",
    "outperform the alternatives on cost",
    "deserve stricter independent oversight",
    "improve public health outcomes",
    "widen the gap between rich and poor",
    "are essential for meeting climate targets",
    "concentrate power in too few hands",
]

_COMMENT_BODIES = [
    "Is there a source for the cost figures behind this?",
    "The wording could be more specific about the time horizon.",
    "Related coverage from last year supports the underlying numbers.",
    "How does this interact with existing regulation?",
    "Consider splitting the economic and social angles into two statements.",
    "The counterexamples listed under the opposing side seem stronger.",
]


def synthetic_text(index: int) -> str:
    subject = _SUBJECTS[index % len(_SUBJECTS)]
    predicate = _PREDICATES[(index // len(_SUBJECTS)) % len(_PREDICATES)]
    return f"{subject} {predicate}"


def synthetic_negated_text(index: int) -> str | None:
    """A custom negated rendering for every seventh synthetic statement."""
    if index % 7 != 3:
        return None
    text = synthetic_text(index)
    if " should " in f" {text} ":
        return text.replace("should ", "should not ", 1)
    if " are " in text:
        return text.replace(" are ", " are not ", 1)
    return None


def smoking_corpus() -> dict:
    """The worked smoking-ban dialog as an importable corpus."""
    ts = BASE_TS
    statements = []
    for sid, text in sorted(_SMOKING_PLAIN.items()):
        statements.append(
            {
                "id": sid,
                "kind": Kind.PLAIN.value,
                "text_normal": text,
                "text_negated_custom": (
                    "Governments should not ban smoking" if sid == SMOKING_MAIN_ID else None
                ),
                "status": "approved",
                "author": 1,
                "created_at": ts + sid * TICK_MS,
                "overlong_exempt": False,
                "relation": None,
            }
        )

    edges = []
    for edge_id, child, polarity, parent, relation_id in _SMOKING_EDGES:
        child_text = _SMOKING_PLAIN[child]
        parent_text = _SMOKING_PLAIN[parent]
        text_normal = relation_text_normal(child_text, polarity, parent_text)
        statements.append(
            {
                "id": relation_id,
                "kind": Kind.RELATION.value,
                "text_normal": text_normal,
                "text_negated_custom": relation_text_negated(
                    child_text, polarity, parent_text
                ),
                "status": "approved",
                "author": 1,
                "created_at": ts + relation_id * TICK_MS,
                "overlong_exempt": len(text_normal) > MAX_TEXT_LEN,
                "relation": {
                    "child": child,
                    "child_form": Form.NORMAL.value,
                    "parent": parent,
                    "polarity": polarity.value,
                },
            }
        )
        edges.append(
            {
                "id": edge_id,
                "child": child,
                "child_form": Form.NORMAL.value,
                "parent": parent,
                "polarity": polarity.value,
                "relation_statement": relation_id,
                "created_at": ts + (700 + edge_id) * TICK_MS,
            }
        )

    return {
        "schema_version": CORPUS_SCHEMA_VERSION,
        "statements": statements,
        "edges": edges,
        "users": [
            {
                "id": 1,
                "username": "user-1",
                "is_moderator": True,
                "approved_count": len(_SMOKING_PLAIN),
                "created_at": ts,
            }
        ],
        "beliefs": [
            {
                "user": 1,
                "statement": 651,
                "form": Form.NORMAL.value,
                "created_at": ts + 800 * TICK_MS,
            },
            {
                "user": 1,
                "statement": 657,
                "form": Form.NORMAL.value,
                "created_at": ts + 801 * TICK_MS,
            },
        ],
        "comments": [
            {
                "id": 1,
                "statement": 657,
                "author": 1,
                "author_username": "user-1",
                "body": "Does the proposal cover e-cigarettes as well?",
                "created_at": ts + 802 * TICK_MS,
            }
        ],
    }


def build_seed_corpus(
    plain_statements: int = DEFAULT_PLAIN_STATEMENTS,
    edges: int = DEFAULT_EDGES,
    reused: int = DEFAULT_REUSED,
    members: int = 18,
) -> dict:
    """Build the full seed corpus: smoking dialog plus synthetic content.

    Fully deterministic (index arithmetic, fixed clock), so repeated builds
    produce byte-identical canonical exports. The totals count plain
    statements and edges; auto-generated relation-statements come on top.
    ``reused`` statements end up as the child of exactly two edges each;
    every other statement is a child at most once.
    """
    base = smoking_corpus()
    n_plain = plain_statements - len(_SMOKING_PLAIN)
    n_edges = edges - len(_SMOKING_EDGES)
    if n_plain < reused + 20 or n_edges < 2 * reused:
        raise ValueError("corpus targets too small for the reuse plan")

    tick = _ticker()
    store = Store(clock=tick, draft_threshold=3)
    store._apply("import_corpus", {"corpus": base})

    member_ids = []
    for index in range(members):
        user = store.register(f"member-{index + 2:02d}", "seed-credential")
        member_ids.append(user.id)
    moderator = 1

    # Statements: members contribute roughly a third up to 128, the
    # moderator authors the rest. Member drafts are approved right away
    # until the auto-approval threshold kicks in.
    member_quota = min(128, n_plain)
    statement_ids: list[int] = []
    member_cursor = 0
    for index in range(n_plain):
        if index < member_quota:
            author = member_ids[member_cursor % len(member_ids)]
            member_cursor += 1
        else:
            author = moderator
        statement = store.submit_statement(
            author, synthetic_text(index), synthetic_negated_text(index)
        )
        if statement.status.value == "draft":
            store.approve(moderator, statement.id)
        statement_ids.append(statement.id)

    roots = statement_ids[:20]
    reused_children = statement_ids[20 : 20 + reused]
    single_children = statement_ids[20 + reused :]
    if len(single_children) < n_edges - 2 * reused:
        raise ValueError("not enough single-use children for the edge plan")

    relation_ids: list[int] = []

    def _add_edge(k: int, child: int, parent: int) -> None:
        actor = member_ids[k % len(member_ids)] if k % 4 == 1 else moderator
        child_form = Form.NEGATED if k % 5 == 0 else Form.NORMAL
        parent_form = Form.NEGATED if k % 7 == 0 else Form.NORMAL
        polarity = Polarity.SUPPORT if k % 2 == 0 else Polarity.OPPOSE
        _, relation = store.add_relation(
            actor, child, child_form, parent, parent_form, polarity
        )
        if relation is not None:
            relation_ids.append(relation.id)

    k = 0
    for i, child in enumerate(reused_children):
        _add_edge(k, child, roots[i % 20])
        k += 1
        _add_edge(k, child, roots[(i + 7) % 20])
        k += 1
    for i in range(n_edges - 2 * reused):
        child = single_children[i]
        if i < 15 and relation_ids:
            # A slice of edges lands on relation-statements, arguing the
            # relevance of an existing connection.
            parent = relation_ids[(i * 5) % len(relation_ids)]
        elif i % 3 == 0:
            parent = reused_children[(i // 3) % reused]
        else:
            parent = roots[i % 20]
        _add_edge(k, child, parent)
        k += 1

    # Beliefs: a deterministic sprinkle across plain and relation
    # statements, mixing forms.
    for mi, user in enumerate(member_ids):
        targets = {statement_ids[(mi * 13 + j * 29) % n_plain] for j in range(10)}
        for j, target in enumerate(sorted(targets)):
            form = Form.NEGATED if (mi + j) % 4 == 0 else Form.NORMAL
            store.set_belief(user, target, form)
        store.set_belief(user, relation_ids[(mi * 11) % len(relation_ids)], Form.NORMAL)
    for user in member_ids[:3]:
        store.set_belief(user, SMOKING_MAIN_ID, Form.NORMAL)
    store.set_belief(member_ids[3], SMOKING_MAIN_ID, Form.NEGATED)

    for i, body in enumerate(_COMMENT_BODIES):
        author = member_ids[i % len(member_ids)] if i % 2 else moderator
        store.add_comment(author, statement_ids[(i * 37) % n_plain], body)

    corpus = store.export_corpus()
    _check_totals(corpus, plain_statements, edges, reused)
    return corpus


def _ticker():
    state = {"now": BASE_TS + 1_000 * TICK_MS}

    def tick() -> int:
        state["now"] += TICK_MS
        return state["now"]

    return tick


def _check_totals(corpus: dict, plain: int, edges: int, reused: int) -> None:
    got_plain = sum(1 for s in corpus["statements"] if s["kind"] == Kind.PLAIN.value)
    got_edges = len(corpus["edges"])
    degrees: dict[int, int] = {}
    for edge in corpus["edges"]:
        degrees[edge["child"]] = degrees.get(edge["child"], 0) + 1
    got_reused = sum(1 for d in degrees.values() if d > 1)
    if (got_plain, got_edges, got_reused) != (plain, edges, reused):
        raise AssertionError(
            f"seed corpus totals off: plain={got_plain} edges={got_edges} "
            f"reused={got_reused}"
        )
