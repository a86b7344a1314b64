"""Batch command line over the same handlers the HTTP service uses.

Every endpoint-mirroring subcommand builds the identical request model and
prints the handler's payload, so CLI output and HTTP response bodies agree
byte for byte once both are canonically serialized. Exit codes: 0 success,
1 runtime error (message on stderr), 2 usage error.
"""

from __future__ import annotations

import json
import os
import sys
from importlib import resources

import click

from .errors import EngineError
from .newsgroups import eval_clustering, format_eval, load_dataset
from .sentindex import build_index, load_index, save_index
from .service import handlers
from .service.app import DEFAULT_PORT, PORT_ENV, create_app
from .service.models import (
    ClusterRequest,
    IndexQueryRequest,
    KpaParamsIn,
    KpaSubmitRequest,
    NarrativeRequest,
    RelatednessRequest,
    SentenceIn,
    SentenceScoreRequest,
    ThemesRequest,
    TopicIn,
    TopicSentenceRequest,
    WikifyRequest,
)
from .textcore import make_sentence


def dumps(payload: dict) -> str:
    """Canonical JSON used for CLI output and golden comparisons."""
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)


def _read_records(path: str) -> list[dict]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for i, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise click.ClickException(f"{path} line {i}: not valid JSON ({exc})")
            if not isinstance(obj, dict) or "text" not in obj:
                raise click.ClickException(f"{path} line {i}: expected an object with a text field")
            records.append({"id": str(obj.get("id", f"r{i - 1}")), "text": str(obj["text"])})
    if not records:
        raise click.ClickException(f"{path} holds no records")
    return records


def _emit(payload: dict, fmt: str, text_renderer=None) -> None:
    if fmt == "json" or text_renderer is None:
        click.echo(dumps(payload))
    else:
        click.echo(text_renderer(payload))


format_option = click.option(
    "--format", "fmt", type=click.Choice(["json", "text"]), default="json", show_default=True
)
topic_options = [
    click.option("--topic", required=True, help="Topic text."),
    click.option("--target", default=None, help="Target concept the topic acts on."),
    click.option(
        "--polarity",
        type=click.Choice(["promoting", "suppressing"]),
        default=None,
        help="Whether the topic promotes or suppresses its target.",
    ),
]


def with_topic(fn):
    for opt in reversed(topic_options):
        fn = opt(fn)
    return fn


class _EngineErrorGroup(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except EngineError as exc:
            click.echo(f"error [{exc.code}]: {exc}", err=True)
            sys.exit(1)


@click.group(cls=_EngineErrorGroup)
@click.version_option(package_name="argmine")
def main() -> None:
    """Argument mining toolkit: clustering, wikification, key point
    analysis, narrative generation, and the service around them."""


@main.command()
@click.option("--text", required=True)
@click.option("--lexicon", default="default", show_default=True)
@format_option
def wikify(text: str, lexicon: str, fmt: str) -> None:
    """Detect concept mentions in a text."""
    payload = handlers.handle_wikify(WikifyRequest(text=text, lexicon=lexicon))

    def render(p: dict) -> str:
        if not p["mentions"]:
            return "no mentions"
        return "\n".join(
            f"[{m['first_token']}-{m['last_token']}] {m['surface']} -> {m['concept']}"
            + (" (redirect)" if m["via_redirect"] else "")
            for m in p["mentions"]
        )

    _emit(payload, fmt, render)


@main.command()
@click.option("--concept-a", required=True)
@click.option("--concept-b", required=True)
@format_option
def relatedness(concept_a: str, concept_b: str, fmt: str) -> None:
    """Score how related two concept titles are."""
    payload = handlers.handle_relatedness(
        RelatednessRequest(concept_a=concept_a, concept_b=concept_b)
    )
    _emit(payload, fmt, lambda p: f"{p['score']:.3f}")


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--k", required=True, type=int)
@click.option("--algorithm", type=click.Choice(["sib", "kmeans"]), default="sib", show_default=True)
@click.option("--restarts", default=10, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--max-sweeps", default=15, show_default=True, type=int)
@click.option("--min-df", default=1, show_default=True, type=int)
@click.option("--max-df-fraction", default=1.0, show_default=True, type=float)
@format_option
def cluster(
    input_path: str,
    k: int,
    algorithm: str,
    restarts: int,
    seed: int,
    max_sweeps: int,
    min_df: int,
    max_df_fraction: float,
    fmt: str,
) -> None:
    """Cluster the documents of a JSONL file."""
    docs = [SentenceIn(**r) for r in _read_records(input_path)]
    payload = handlers.handle_cluster(
        ClusterRequest(
            documents=docs,
            k=k,
            algorithm=algorithm,
            restarts=restarts,
            seed=seed,
            max_sweeps=max_sweeps,
            min_df=min_df,
            max_df_fraction=max_df_fraction,
        )
    )

    def render(p: dict) -> str:
        lines = [f"k={p['k']} objective_bits={p['objective_bits']:.6f}"]
        lines += [
            f"{doc_id}\t{label}" for doc_id, label in zip(p["document_ids"], p["assignment"])
        ]
        return "\n".join(lines)

    _emit(payload, fmt, render)


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--assignment", required=True, help="Comma-separated cluster label per sentence.")
@click.option("--lexicon", default="default", show_default=True)
@click.option("--alpha", default=0.05, show_default=True, type=float)
@click.option("--theta-dedupe", default=0.8, show_default=True, type=float)
@format_option
def themes(
    input_path: str, assignment: str, lexicon: str, alpha: float, theta_dedupe: float, fmt: str
) -> None:
    """Name each cluster by its statistically enriched concepts."""
    try:
        labels = [int(part) for part in assignment.split(",")]
    except ValueError:
        raise click.UsageError("--assignment must be comma-separated integers")
    sentences = [SentenceIn(**r) for r in _read_records(input_path)]
    payload = handlers.handle_themes(
        ThemesRequest(
            sentences=sentences,
            assignment=labels,
            lexicon=lexicon,
            alpha=alpha,
            theta_dedupe=theta_dedupe,
        )
    )

    def render(p: dict) -> str:
        lines = []
        for cluster in p["clusters"]:
            names = ", ".join(t["concept"] for t in cluster["themes"]) or "(none)"
            lines.append(f"cluster {cluster['cluster']}: {names}")
        return "\n".join(lines)

    _emit(payload, fmt, render)


@main.group()
def score() -> None:
    """Sentence-level argument scores."""


def _topic_in(topic: str, target: str | None, polarity: str | None) -> TopicIn:
    return TopicIn(text=topic, target=target, action_polarity=polarity)


@score.command("claim")
@click.option("--sentence", required=True)
@with_topic
@format_option
def score_claim(sentence: str, topic: str, target: str | None, polarity: str | None, fmt: str) -> None:
    payload = handlers.handle_claim_score(
        TopicSentenceRequest(sentence=sentence, topic=_topic_in(topic, target, polarity))
    )
    _emit(payload, fmt, lambda p: f"{p['score']:.3f}")


@score.command("evidence")
@click.option("--sentence", required=True)
@with_topic
@format_option
def score_evidence(
    sentence: str, topic: str, target: str | None, polarity: str | None, fmt: str
) -> None:
    payload = handlers.handle_evidence_score(
        TopicSentenceRequest(sentence=sentence, topic=_topic_in(topic, target, polarity))
    )
    _emit(payload, fmt, lambda p: f"{p['score']:.3f}")


@score.command("quality")
@click.option("--sentence", required=True)
@format_option
def score_quality(sentence: str, fmt: str) -> None:
    payload = handlers.handle_quality(SentenceScoreRequest(sentence=sentence))
    _emit(payload, fmt, lambda p: f"{p['score']:.3f}")


@score.command("stance")
@click.option("--sentence", required=True)
@with_topic
@format_option
def score_stance(
    sentence: str, topic: str, target: str | None, polarity: str | None, fmt: str
) -> None:
    payload = handlers.handle_stance(
        TopicSentenceRequest(sentence=sentence, topic=_topic_in(topic, target, polarity))
    )
    _emit(payload, fmt, lambda p: f"{p['label']} ({p['confidence']:.3f})")


@score.command("boundaries")
@click.option("--sentence", required=True)
@format_option
def score_boundaries(sentence: str, fmt: str) -> None:
    payload = handlers.handle_claim_boundaries(SentenceScoreRequest(sentence=sentence))
    _emit(payload, fmt, lambda p: f"[{p['start']}:{p['end']}] {p['claim']}")


def _kpa_text(p: dict) -> str:
    covered = round(p["coverage"] * p["total_sentences"])
    lines = [f"coverage: {p['coverage']:.3f} ({covered}/{p['total_sentences']} sentences)"]
    if not p["key_points"]:
        lines.append("no key points")
    for i, kp in enumerate(p["key_points"], 1):
        lines.append(f"{i}. {kp['text']}  salience={kp['salience']}")
        for match in kp["matches"][:5]:
            lines.append(f"   - {match['id']}  score={match['score']:.3f}")
    return "\n".join(lines)


kpa_param_options = [
    click.option("--k-max", default=10, show_default=True, type=int),
    click.option("--tau", default=0.55, show_default=True, type=float),
    click.option("--tau-dup", default=0.75, show_default=True, type=float),
    click.option("--q-min", default=0.5, show_default=True, type=float),
    click.option("--min-tokens", default=3, show_default=True, type=int),
    click.option("--max-tokens", default=20, show_default=True, type=int),
    click.option("--delta", default=2, show_default=True, type=int),
    click.option("--multi-match", is_flag=True, default=False),
    click.option(
        "--matcher",
        type=click.Choice(["token_overlap", "tfidf"]),
        default="token_overlap",
        show_default=True,
    ),
    click.option("--key-point", "key_points", multiple=True, help="Use the given key points instead of extracting them (repeatable)."),
]


def with_kpa_params(fn):
    for opt in reversed(kpa_param_options):
        fn = opt(fn)
    return fn


def _kpa_params_in(
    k_max, tau, tau_dup, q_min, min_tokens, max_tokens, delta, multi_match, matcher, key_points
) -> KpaParamsIn:
    return KpaParamsIn(
        k_max=k_max,
        tau=tau,
        tau_dup=tau_dup,
        q_min=q_min,
        min_tokens=min_tokens,
        max_tokens=max_tokens,
        delta=delta,
        multi_match=multi_match,
        matcher=matcher,
        given_key_points=list(key_points) or None,
    )


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@with_kpa_params
@format_option
def kpa(
    input_path: str,
    k_max: int,
    tau: float,
    tau_dup: float,
    q_min: float,
    min_tokens: int,
    max_tokens: int,
    delta: int,
    multi_match: bool,
    matcher: str,
    key_points: tuple[str, ...],
    fmt: str,
) -> None:
    """Summarize comments as key points with salience and matches."""
    comments = [r["text"] for r in _read_records(input_path)]
    params = _kpa_params_in(
        k_max, tau, tau_dup, q_min, min_tokens, max_tokens, delta, multi_match, matcher, key_points
    )
    payload = handlers.handle_kpa(KpaSubmitRequest(comments=comments, params=params))
    _emit(payload, fmt, _kpa_text)


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@with_topic
@click.option("--stance", type=click.Choice(["pro", "con"]), default="pro", show_default=True)
@click.option("--min-stance-confidence", default=0.0, show_default=True, type=float)
@click.option("--top-n-quality", default=20, show_default=True, type=int)
@click.option("--paragraphs", default=4, show_default=True, type=int)
@click.option("--args-per-paragraph", default=3, show_default=True, type=int)
@click.option("--mode", type=click.Choice(["kpa", "clustering"]), default="kpa", show_default=True)
@click.option("--lexicon", default=None, help="Concept lexicon for clustering-mode headers.")
@format_option
def narrative(
    input_path: str,
    topic: str,
    target: str | None,
    polarity: str | None,
    stance: str,
    min_stance_confidence: float,
    top_n_quality: int,
    paragraphs: int,
    args_per_paragraph: int,
    mode: str,
    lexicon: str | None,
    fmt: str,
) -> None:
    """Compose a stance-consistent speech from argument texts."""
    arguments = [r["text"] for r in _read_records(input_path)]
    payload = handlers.handle_narrative(
        NarrativeRequest(
            topic=_topic_in(topic, target, polarity),
            arguments=arguments,
            stance=stance,
            min_stance_confidence=min_stance_confidence,
            top_n_quality=top_n_quality,
            paragraphs=paragraphs,
            args_per_paragraph=args_per_paragraph,
            mode=mode,
            lexicon=lexicon,
        )
    )
    _emit(payload, fmt, lambda p: p["full_text"])


@main.group()
def index() -> None:
    """Build and query a positional sentence index."""


@index.command("build")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def index_build(input_path: str, out_path: str) -> None:
    """Index a JSONL file of sentences and save it."""
    sentences = [make_sentence(r["id"], r["text"]) for r in _read_records(input_path)]
    idx = build_index(sentences)
    save_index(idx, out_path)
    click.echo(f"indexed {idx.sentence_count} sentences, {idx.term_count} terms -> {out_path}")


@index.command("query")
@click.option("--input", "input_path", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--index", "index_path", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--query", "query_text", required=True)
@click.option("--limit", default=None, type=int)
@click.option("--offset", default=0, show_default=True, type=int)
@format_option
def index_query(
    input_path: str | None,
    index_path: str | None,
    query_text: str,
    limit: int | None,
    offset: int,
    fmt: str,
) -> None:
    """Run a query against a saved index or a JSONL file."""
    if (input_path is None) == (index_path is None):
        raise click.UsageError("give exactly one of --input or --index")
    if input_path is not None:
        sentences = [SentenceIn(**r) for r in _read_records(input_path)]
        payload = handlers.handle_index_query(
            IndexQueryRequest(
                sentences=sentences, query=query_text, limit=limit, offset=offset
            )
        )
    else:
        from .sentindex import execute, parse_query, print_query

        idx = load_index(index_path)
        plan = parse_query(query_text)
        matches = execute(plan, idx, limit=limit, offset=offset)
        payload = {
            "plan": print_query(plan),
            "matches": [
                {"sentence_id": m.sentence_id, "spans": [list(s) for s in m.element_spans]}
                for m in matches
            ],
        }

    def render(p: dict) -> str:
        lines = [f"plan: {p['plan']}"]
        lines += [
            f"{m['sentence_id']}\t" + " ".join(f"{a}-{b}" for a, b in m["spans"])
            for m in p["matches"]
        ]
        lines.append(f"{len(p['matches'])} matches")
        return "\n".join(lines)

    _emit(payload, fmt, render)


@main.command("debate-pipeline")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@with_topic
@click.option("--stance", type=click.Choice(["pro", "con"]), default="pro", show_default=True)
@click.option("--top-n-quality", default=20, show_default=True, type=int)
@click.option("--k-max", default=10, show_default=True, type=int)
@format_option
def debate_pipeline(
    input_path: str,
    topic: str,
    target: str | None,
    polarity: str | None,
    stance: str,
    top_n_quality: int,
    k_max: int,
    fmt: str,
) -> None:
    """Stance-split, quality-filter, key-point-summarize, then speak."""
    arguments = [r["text"] for r in _read_records(input_path)]
    topic_in = _topic_in(topic, target, polarity)
    kept = []
    for text in arguments:
        try:
            verdict = handlers.handle_stance(
                TopicSentenceRequest(sentence=text, topic=topic_in)
            )
        except EngineError as exc:
            if exc.code == "stance.abstain":
                continue
            raise
        if verdict["label"] == stance:
            kept.append(text)
    if not kept:
        raise EngineError(f"no arguments matched stance {stance!r}", code="pipeline.no-arguments")
    ranked = sorted(
        kept,
        key=lambda text: (
            -handlers.handle_quality(SentenceScoreRequest(sentence=text))["score"],
            text,
        ),
    )
    filtered = ranked[:top_n_quality]
    summary = handlers.handle_kpa(
        KpaSubmitRequest(comments=filtered, params=KpaParamsIn(k_max=k_max))
    )
    speech = handlers.handle_narrative(
        NarrativeRequest(
            topic=topic_in,
            arguments=filtered,
            stance=stance,
            top_n_quality=top_n_quality,
        )
    )
    payload = {
        "topic": topic,
        "stance": stance,
        "n_arguments": len(arguments),
        "n_stance_matched": len(kept),
        "n_quality_kept": len(filtered),
        "key_points": summary,
        "speech": speech,
    }
    _emit(payload, fmt, lambda p: p["speech"]["full_text"])


@main.command("eval-20ng")
@click.option("--data", "data_path", required=True, type=click.Path(exists=True))
@click.option("--k", default=20, show_default=True, type=int)
@click.option("--restarts", default=10, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--min-df", default=3, show_default=True, type=int)
@click.option("--max-df-fraction", default=0.5, show_default=True, type=float)
@click.option("--no-kmeans", is_flag=True, default=False, help="Skip the K-Means baseline.")
@click.option(
    "--no-stopwords",
    is_flag=True,
    default=False,
    help="Keep function words and posting boilerplate in the vocabulary.",
)
@click.option(
    "--format", "fmt", type=click.Choice(["json", "text"]), default="text", show_default=True
)
def eval_20ng(
    data_path: str,
    k: int,
    restarts: int,
    seed: int,
    min_df: int,
    max_df_fraction: float,
    no_kmeans: bool,
    no_stopwords: bool,
    fmt: str,
) -> None:
    """Cluster the 20 newsgroups corpus and score against its labels."""
    texts, labels = load_dataset(data_path)
    result = eval_clustering(
        texts,
        labels,
        k=k,
        restarts=restarts,
        seed=seed,
        min_df=min_df,
        max_df_fraction=max_df_fraction,
        with_kmeans=not no_kmeans,
        stopwords=frozenset() if no_stopwords else None,
    )
    if fmt == "json":
        click.echo(dumps(result))
    else:
        click.echo(format_eval(result))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=None, type=int, help=f"Default: ${PORT_ENV} or {DEFAULT_PORT}.")
@click.option("--keys-file", default=None, type=click.Path(exists=True, dir_okay=False))
def serve(host: str, port: int | None, keys_file: str | None) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service.app import load_keys_file

    if port is None:
        port = int(os.environ.get(PORT_ENV, DEFAULT_PORT))
    api_keys = load_keys_file(keys_file) if keys_file is not None else None
    app = create_app(api_keys)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
