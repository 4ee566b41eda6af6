"""Toolkit for finite multi-agent epistemic plausibility models: model
checking for knowledge, conditional and safe belief and strict plausibility,
public announcements and radical upgrades, reduction of dynamic operators,
and decision procedures for the matching notions of bisimilarity."""

from .bisim import (BC_FRAGMENTS, CheckResult, HMReport, PairFamily, Relation,
                    Violation, check_bc, check_structural, definable_pairs,
                    greatest_structural, hennessy_milner, modal_equiv,
                    relation_from_dict, relation_to_dict)
from .corpus import CorpusEntry, CorpusError, corpus_names, load_corpus
from .dynamics import announce, announce_restrict, upgrade, upgrade_promote
from .errors import EmptyAnnouncementError, InputError, ResourceLimitError
from .generate import (GenSpec, generate, genspec_from_dict, genspec_to_dict,
                       load_genspec, random_formula, rename_states)
from .model import (Model, StrictOrders, connectedness_counterexample,
                    eq_class, identity_pairs, is_image_finite,
                    is_locally_connected, is_uniform, load_model, min_set,
                    model_from_dict, model_from_json, model_to_dict,
                    model_to_json, save_model, strict, total_pairs,
                    uniformity_counterexample, validate)
from .rewrite import (RewriteStep, RewriteTrace, reduce_dynamic, replay,
                      rewrite_measure, translate_gt, translate_safe)
from .semantics import Evaluator, holds, is_valid_on, truth_set
from .suites import SuiteReport, run_suite, suite_names
from .syntax import (And, Announce, Atom, Bot, CondBelief, Formula, Fragment,
                     GtBox, Implies, Know, Not, Or, ParseError, SafeBelief,
                     Top, Upgrade, enumerate_formulas, format_formula,
                     formula_depth, fragment_of, gt_dia, has_dynamic, iff,
                     khat, parse)

__version__ = "0.1.0"
