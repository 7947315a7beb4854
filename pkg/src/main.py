# src/main.py

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional
import pandas as pd
from pydantic import TypeAdapter, ValidationError
from annotator.heuristics import AnnotatorConfig, HeuristicAnnotator
from classifiers.models import KINDS, feature_importance, load_model, predict_proba, save_model, threshold_scores, train
from data.cache import default_lexicons
from data.corpus import import_tweet_csv, load_corpus, write_corpus
from data.data_models import AccountRecord, RunConfig, UtcDatetime
from data.feature_io import read_feature_csv, write_feature_csv
from data.synthetic import default_synth_params, generate_synthetic_corpus
from evaluation.cross_validation import CrossValidator
from evaluation.reports import (
    build_provenance,
    dumps_json,
    importance_frame,
    per_label_aggregates,
    summary_frame,
    write_eval_report,
    write_report_csv,
)
from features.matrix import FEATURE_SETS, FeatureMatrix, build_matrix
from features.profile import PROFILE_COLUMNS
from lexicon.lexer import tokenize
from lexicon.lexicons import Lexicons
from utils.config import DEFAULT_CLASSIFIER, DEFAULT_FOLDS, DEFAULT_SEED, VERSION, get_settings
from utils.display import ReportPrinter
from utils.exceptions import BotLexError, DataError, UsageError
from utils.logger import logger, set_level
from utils.progress import console, progress

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class BotLexArgumentParser(argparse.ArgumentParser):
    """Argument errors raise UsageError instead of exiting, so run() owns the exit code."""
    def error(self, message: str):
        raise UsageError(message)


def _parse_params(pairs: Optional[List[str]]) -> Dict[str, Any]:
    params: Dict[str, Any] = {}
    for pair in pairs or []:
        key, sep, raw = pair.partition("=")
        if not sep or not key:
            raise UsageError(f"--param expects KEY=VALUE, got {pair!r}")
        try:
            params[key] = json.loads(raw)
        except json.JSONDecodeError:
            params[key] = raw
    return params


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    common = BotLexArgumentParser(add_help=False)
    common.add_argument("--input", type=str, help="Input file (corpus JSONL, tweet CSV with --tweet-csv, or features CSV)")
    common.add_argument("--output", "--out", dest="output", type=str, help="Output file")
    common.add_argument("--seed", type=int, default=settings.default_seed, help=f"Master seed (default: {DEFAULT_SEED})")
    strictness = common.add_mutually_exclusive_group()
    strictness.add_argument("--strict", dest="strict", action="store_true", default=True, help="Abort on the first malformed corpus line (default)")
    strictness.add_argument("--lenient", dest="strict", action="store_false", help="Skip malformed corpus lines and report them")
    common.add_argument("--lexicon-dir", type=str, default=None, help="Lexicon directory (overrides BOTLEX_LEXICON_DIR)")
    common.add_argument("--no-emoji", dest="include_emoji", action="store_false", help="Drop non-ASCII emoji from the emoticon lexicon")
    common.add_argument("--jobs", type=int, default=1, help="Worker threads for feature extraction and training (default: 1)")
    common.add_argument("--tweet-csv", action="store_true", help="Read --input as a per-tweet CSV instead of corpus JSONL")
    common.add_argument("--now", type=str, default=None, help="Reference time for profile features (default: latest corpus timestamp)")
    common.add_argument("--log-level", type=str, default=None, help="Logging level (default: BOTLEX_LOG_LEVEL or INFO)")

    model_flags = BotLexArgumentParser(add_help=False)
    model_flags.add_argument("--feature-set", choices=list(FEATURE_SETS), default="L", help="Feature set: F, L or FL (default: L)")
    model_flags.add_argument("--classifier", choices=KINDS, default=settings.default_classifier, help=f"Classifier kind (default: {DEFAULT_CLASSIFIER})")
    model_flags.add_argument("--param", action="append", metavar="KEY=VALUE", help="Classifier hyper-parameter override (repeatable)")

    parser = BotLexArgumentParser(prog="botlex", description="Lexical-richness social bot detection toolkit.")
    parser.add_argument("--version", action="version", version=f"botlex {VERSION}")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=BotLexArgumentParser)

    p = sub.add_parser("tokenize", parents=[common], help="Tokenize a string or a file of tweets into JSON lines")
    p.add_argument("--text", type=str, help="Tweet text to tokenize")

    p = sub.add_parser("features", parents=[common], help="Extract per-account features into a CSV")
    p.add_argument("--with-rates", action="store_true", help="Also write per-token contraction and emoticon rates")
    p.add_argument("--no-profile", action="store_true", help="Skip profile columns even when metadata is present")

    p = sub.add_parser("annotate", parents=[common], help="Screen accounts with the annotation heuristics")
    p.add_argument("--url-threshold", type=float, default=0.70, help="URL/hashtag token share that fires the content flag")
    p.add_argument("--rate-threshold", type=int, default=15, help="Tweets per window that fire the rate flag")
    p.add_argument("--window-seconds", type=float, default=60.0, help="Rate window length in seconds")

    p = sub.add_parser("train", parents=[common, model_flags], help="Train a classifier and save it as JSON")
    p.add_argument("--model", type=str, help="Model output path (alias of --output)")

    p = sub.add_parser("predict", parents=[common], help="Score accounts with a saved model")
    p.add_argument("--model", type=str, required=True, help="Saved model JSON")

    p = sub.add_parser("evaluate", parents=[common, model_flags], help="Stratified k-fold cross-validation")
    p.add_argument("--folds", type=int, default=settings.default_folds, help=f"Number of folds (default: {DEFAULT_FOLDS})")
    p.add_argument("--report", type=str, help="EvalReport JSON path")
    p.add_argument("--summary", type=str, help="One-row summary CSV path")
    p.add_argument("--dataset-tag", type=str, help="Dataset tag (default: <input stem>_<feature set>)")

    p = sub.add_parser("importance", parents=[common, model_flags], help="Random forest feature-importance ranking")
    p.add_argument("--model", type=str, help="Existing random_forest model (trained on --input otherwise)")

    p = sub.add_parser("synth", parents=[common], help="Generate a synthetic labelled corpus")
    p.add_argument("--n-accounts", type=int, default=None, help="Accounts per class (default: 100)")
    p.add_argument("--tweets-per-account", type=int, default=None, help="Tweets per account (default: 200)")
    p.add_argument("--with-profile", action="store_true", help="Attach synthetic profile metadata")
    p.add_argument("--profile-signal", type=float, default=0.0, help="Class shift of the profile metadata")

    sub.add_parser("plot-data", parents=[common], help="Per-label feature means for bar charts")
    return parser


class BotLexCLI:
    """Runs one subcommand; every report it writes embeds version, effective config and lexicon checksums."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.params = _parse_params(getattr(args, "param", None))
        self.config = RunConfig(
            subcommand=args.subcommand,
            input=args.input,
            output=args.output or getattr(args, "report", None),
            feature_set=getattr(args, "feature_set", None),
            classifier=getattr(args, "classifier", None),
            folds=getattr(args, "folds", None),
            seed=args.seed,
            strict=args.strict,
            lexicon_dir=args.lexicon_dir,
            jobs=args.jobs,
            include_emoji=args.include_emoji,
            dataset_tag=getattr(args, "dataset_tag", None),
            now=args.now,
            model=getattr(args, "model", None),
            with_rates=getattr(args, "with_rates", False),
            params=self.params,
        )
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        self._lexicons: Optional[Lexicons] = None

    @property
    def lexicons(self) -> Lexicons:
        if self._lexicons is None:
            self._lexicons = default_lexicons(self.args.lexicon_dir, include_emoji=self.args.include_emoji)
        return self._lexicons

    def provenance(self) -> Dict[str, Any]:
        document = build_provenance(self.config, self.lexicons)
        # worker count never changes results, so it stays out of the embedded config
        document["run_config"].pop("jobs", None)
        return document

    def _require(self, value: Optional[str], flag: str) -> str:
        if not value:
            raise UsageError(f"{self.args.subcommand} requires {flag}")
        return value

    def _reference_time(self):
        if self.args.now is None:
            return None
        try:
            return TypeAdapter(UtcDatetime).validate_python(self.args.now)
        except ValidationError as exc:
            raise UsageError(f"--now is not an ISO-8601 timestamp: {self.args.now!r}") from exc

    def load_accounts(self) -> List[AccountRecord]:
        path = self._require(self.args.input, "--input")
        progress.update_status("Corpus", f"reading {path}")
        if self.args.tweet_csv:
            accounts = import_tweet_csv(path)
        else:
            accounts = load_corpus(path, strict=self.args.strict).records
        progress.update_status("Corpus", f"{len(accounts)} accounts")
        return accounts

    def load_matrix(self, include_profile: bool, with_rates: bool = False) -> FeatureMatrix:
        """Feature CSV inputs are read as-is; corpora are featurized on the fly."""
        path = self._require(self.args.input, "--input")
        if path.endswith(".csv") and not self.args.tweet_csv:
            return read_feature_csv(path)
        return build_matrix(
            self.load_accounts(),
            self.lexicons,
            include_profile=include_profile,
            now=self._reference_time(),
            with_rates=with_rates,
            jobs=self.args.jobs,
            strict=self.args.strict,
        )

    def training_matrix(self) -> FeatureMatrix:
        tag = self.args.feature_set
        return self.load_matrix(include_profile=tag in ("F", "FL")).feature_set(tag)

    # ==================== Subcommands ====================

    def cmd_tokenize(self) -> None:
        if self.args.text is not None:
            tweets = [self.args.text]
        else:
            path = self._require(self.args.input, "--input or --text")
            try:
                tweets = Path(path).read_text(encoding="utf-8").splitlines()
            except UnicodeDecodeError as exc:
                raise DataError(f"{path} is not valid UTF-8 (byte offset {exc.start})") from exc
        lines = []
        for index, text in enumerate(tweets):
            for token in tokenize(text, self.lexicons):
                record = {"tweet": index, "text": token.text, "kind": token.kind.name, "span": list(token.span)}
                lines.append(json.dumps(record, ensure_ascii=False))
        body = "".join(line + "\n" for line in lines)
        if self.args.output:
            Path(self.args.output).write_text(body, encoding="utf-8")
            logger.info(f"Wrote {len(lines)} tokens to {self.args.output}")
        else:
            sys.stdout.write(body)

    def cmd_features(self) -> None:
        output = self._require(self.args.output, "--output")
        accounts = self.load_accounts()
        with_profile = not self.args.no_profile and bool(accounts) and all(a.profile is not None for a in accounts)
        matrix = build_matrix(
            accounts,
            self.lexicons,
            include_profile=with_profile,
            now=self._reference_time(),
            with_rates=self.args.with_rates,
            jobs=self.args.jobs,
            strict=self.args.strict,
        )
        write_feature_csv(matrix, output)

    def cmd_annotate(self) -> None:
        output = self._require(self.args.output, "--output")
        try:
            config = AnnotatorConfig(
                url_hashtag_threshold=self.args.url_threshold,
                rate_threshold=self.args.rate_threshold,
                window_seconds=self.args.window_seconds,
            )
        except ValidationError as exc:
            raise UsageError(f"invalid annotator thresholds: {exc}") from exc
        annotator = HeuristicAnnotator(self.lexicons, config)
        reports = [annotator.annotate(account) for account in self.load_accounts()]
        lines = [json.dumps(r.model_dump()) + "\n" for r in reports]
        Path(output).write_text("".join(lines), encoding="utf-8")
        # run metadata goes to a sidecar; the JSONL holds reports only
        sidecar = {"provenance": self.provenance(), "annotator": config.model_dump()}
        Path(f"{output}.meta.json").write_text(dumps_json(sidecar), encoding="utf-8")
        logger.info(f"Wrote annotation flags for {len(reports)} accounts to {output}")
        ReportPrinter.print_annotation_summary(reports)

    def cmd_train(self) -> None:
        output = self._require(self.args.model or self.args.output, "--model or --output")
        model = train(self.args.classifier, self.training_matrix(), self.params, self.args.seed, jobs=self.args.jobs)
        model.provenance = self.provenance()
        save_model(model, output)

    def cmd_predict(self) -> None:
        output = self._require(self.args.output, "--output")
        model = load_model(self.args.model)
        needs_profile = any(name in PROFILE_COLUMNS for name in model.feature_names)
        matrix = self.load_matrix(include_profile=needs_profile).select(model.feature_names)
        scores = predict_proba(model, matrix)
        frame = pd.DataFrame(
            {"account_id": matrix.account_ids, "score": scores, "prediction": threshold_scores(scores)}
        )
        write_report_csv(frame, output, self.provenance())

    def cmd_evaluate(self) -> None:
        report_path = self.args.report or self.args.output
        if not report_path and not self.args.summary:
            raise UsageError("evaluate requires --report (or --output) and/or --summary")
        tag = self.args.feature_set
        dataset_tag = self.args.dataset_tag or f"{Path(self._require(self.args.input, '--input')).stem}_{tag}"
        matrix = self.training_matrix()
        validator = CrossValidator(self.args.classifier, self.params, k=self.args.folds, seed=self.args.seed, jobs=self.args.jobs)
        report = validator.run(matrix, dataset_tag=dataset_tag, feature_set=tag, provenance=self.provenance())
        if report_path:
            write_eval_report(report, report_path)
        if self.args.summary:
            write_report_csv(summary_frame([report]), self.args.summary, self.provenance())
        ReportPrinter.print_eval_summary(report)

    def cmd_importance(self) -> None:
        output = self._require(self.args.output, "--output")
        if self.args.model:
            model = load_model(self.args.model)
        else:
            if self.args.classifier != "random_forest":
                raise UsageError("importance trains a random_forest; pass --classifier random_forest or omit it")
            model = train("random_forest", self.training_matrix(), self.params, self.args.seed, jobs=self.args.jobs)
        frame = importance_frame(model.feature_names, feature_importance(model))
        write_report_csv(frame, output, self.provenance())
        ReportPrinter.print_importance(frame)

    def cmd_synth(self) -> None:
        output = self._require(self.args.output, "--output")
        params = default_synth_params(seed=self.args.seed)
        updates: Dict[str, Any] = {"include_profile": self.args.with_profile, "profile_signal": self.args.profile_signal}
        if self.args.n_accounts is not None:
            updates["n_accounts"] = self.args.n_accounts
        if self.args.tweets_per_account is not None:
            updates["tweets_per_account"] = self.args.tweets_per_account
        try:
            params = params.model_validate({**params.model_dump(), **updates})
        except ValidationError as exc:
            raise UsageError(f"invalid synthetic corpus settings: {exc}") from exc
        write_corpus(generate_synthetic_corpus(params, self.lexicons), output)

    def cmd_plot_data(self) -> None:
        output = self._require(self.args.output, "--output")
        frame = per_label_aggregates(self.load_matrix(include_profile=False))
        write_report_csv(frame, output, self.provenance())

    def dispatch(self) -> None:
        handler = getattr(self, "cmd_" + self.args.subcommand.replace("-", "_"))
        handler()


def run(argv: Optional[List[str]] = None) -> int:
    """Runs the CLI; 0 on success, 1 on usage errors, 2 on data, lexicon, model or evaluation errors."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.log_level:
            try:
                set_level(args.log_level)
            except ValueError as exc:
                raise UsageError(f"unknown log level {args.log_level!r}") from exc
        cli = BotLexCLI(args)
    except UsageError as exc:
        logger.error(f"Usage error: {exc}")
        return EXIT_USAGE
    use_live = console.is_terminal and args.subcommand in ("evaluate", "features")
    if use_live:
        progress.start()
    try:
        cli.dispatch()
    except UsageError as exc:
        logger.error(f"Usage error: {exc}")
        return EXIT_USAGE
    except BotLexError as exc:
        logger.error(str(exc))
        return EXIT_DATA
    except OSError as exc:
        logger.error(f"I/O error: {exc}")
        return EXIT_DATA
    except UnicodeDecodeError as exc:
        logger.error(f"Input is not valid UTF-8: {exc}")
        return EXIT_DATA
    finally:
        if use_live:
            progress.stop()
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
