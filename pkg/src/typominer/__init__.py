"""typominer: mine misspelling and grammar-fix edits from version-control
history into a filtered, feature-annotated JSONL corpus."""

from .align import AlignOp, AtomicEdit, align, apply_edits, atomic_edits, edit_distance, frequency_table
from .charlm import CharLangModel, perplexity, train_lm
from .classifier import (
    ClassifierWeights,
    LabeledExample,
    cross_validate,
    label_corpus,
    predict,
    train,
)
from .corpus import (
    CommitRecord,
    Edit,
    EditSide,
    FeatureVector,
    ParseError,
    ParseWarnings,
    RepoMeta,
    ValidationError,
    parse_commit,
    read_corpus,
    serialize_commit,
    write_corpus,
)
from .extract import DiffHunk, ExtractConfig, extract_commit, extract_repo, is_typo_commit, pair_edits
from .features import featurize, norm_edit_distance, numeric_only
from .harvest import EligibilityConfig, HarvestStats, harvest, is_eligible
from .langid import LangProfile, code_likeness, detect, filter_edit, train_profile, train_profiles
from .metrics import (
    ConfusionCounts,
    StatsReport,
    corpus_stats,
    fbeta_from_pr,
    precision_recall_fbeta,
    score_system,
    welch_ttest,
)

__version__ = "0.1.0"
