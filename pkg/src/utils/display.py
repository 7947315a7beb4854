# src/utils/display.py

from typing import Sequence
import pandas as pd
from colorama import Fore, Style
from tabulate import tabulate
from data.data_models import AnnotationReport, EvalReport


class ReportPrinter:
    """Human-readable console summaries; file outputs never depend on these."""
    @staticmethod
    def print_eval_summary(report: EvalReport) -> None:
        print(f"\n{Fore.WHITE}{Style.BRIGHT}EVALUATION SUMMARY: {report.dataset_tag}{Style.RESET_ALL}")
        print(
            f"Classifier: {Fore.CYAN}{report.classifier_label}{Style.RESET_ALL} | "
            f"Feature set: {Fore.CYAN}{report.feature_set}{Style.RESET_ALL} | "
            f"{report.k} folds, seed {report.seed}"
        )
        rows = [[f.fold, f.n_test, f.accuracy, f.precision, f.recall, f.auc] for f in report.folds]
        rows.append(["mean", "", report.mean.accuracy, report.mean.precision, report.mean.recall, report.mean.auc])
        print(tabulate(rows, headers=["Fold", "N", "Accuracy", "Precision", "Recall", "AUC"], floatfmt=".4f"))

    @staticmethod
    def print_importance(frame: pd.DataFrame) -> None:
        print(f"\n{Fore.WHITE}{Style.BRIGHT}FEATURE IMPORTANCE (mean decrease in Gini impurity):{Style.RESET_ALL}")
        rows = []
        for row in frame.itertuples(index=False):
            color = Fore.GREEN if row.rank <= 2 else Fore.WHITE
            rows.append([row.rank, f"{color}{row.feature}{Style.RESET_ALL}", row.importance])
        print(tabulate(rows, headers=["Rank", "Feature", "Importance"], floatfmt=".4f"))

    @staticmethod
    def print_annotation_summary(reports: Sequence[AnnotationReport]) -> None:
        print(f"\n{Fore.WHITE}{Style.BRIGHT}ANNOTATION FLAGS ({len(reports)} accounts):{Style.RESET_ALL}")
        rows = [
            ["auto-generated name", sum(r.autogen_name for r in reports)],
            ["URL/hashtag share", sum(r.url_hashtag_flag for r in reports)],
            ["tweet rate", sum(r.rate_flag for r in reports)],
            [f"{Fore.YELLOW}any flag{Style.RESET_ALL}", sum(r.flags_fired > 0 for r in reports)],
        ]
        print(tabulate(rows, headers=["Heuristic", "Accounts flagged"]))
