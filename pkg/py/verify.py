"""
Executable checks for the continued-fraction identities and the Markov orderings.

Every check is an exact integer equality or strict inequality. Reports carry the
failing inputs with both sides as decimal strings.
"""

import math
import random
import logging
import multiprocessing
from dataclasses import dataclass, field

import cf_core
import trees
import snake
from cf_core import Marker, SegmentedCF, continuant, numerator

DEFAULT_SEED = 20180101


@dataclass
class CheckReport:
    name: str
    cases_run: int = 0
    failures: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.failures

    def check(self, identity, inputs, lhs, rhs, relation="=="):
        self.cases_run += 1
        ok = lhs == rhs if relation == "==" else lhs > rhs
        if not ok:
            self.failures.append({
                "identity": identity,
                "inputs": inputs,
                "lhs": str(lhs),
                "relation": relation,
                "rhs": str(rhs),
            })
            logging.debug(f"{self.name}: {identity} failed for {inputs}")
        return ok

    def merge(self, other):
        return CheckReport(
            name=self.name,
            cases_run=self.cases_run + other.cases_run,
            failures=self.failures + other.failures,
            metadata={**self.metadata, **other.metadata},
        )

    def to_dict(self):
        return {
            "name": self.name,
            "cases_run": self.cases_run,
            "passed": self.passed,
            "failures": self.failures,
            "metadata": self.metadata,
        }


@dataclass(frozen=True)
class GeneratorBounds:
    min_length: int = 1
    max_length: int = 5
    max_entry: int = 9
    placeholder_probability: float = 0.15
    max_segments: int = 6

    @classmethod
    def from_config(cls, conf):
        return cls(**{k: conf[k] for k in cls.__dataclass_fields__ if k in conf})


def random_segment(rng, bounds, placeholders=True):
    if placeholders and rng.random() < bounds.placeholder_probability:
        return cf_core.ZERO_PAIR
    length = rng.randint(bounds.min_length, bounds.max_length)
    return tuple(rng.randint(1, bounds.max_entry) for _ in range(length))


def random_mus(rng, bounds, k=None):
    if k is None:
        k = rng.randint(1, bounds.max_segments)
    return tuple(random_segment(rng, bounds) for _ in range(k))


def random_segmented(rng, bounds):
    mus = random_mus(rng, bounds)
    return SegmentedCF(mus, tuple(rng.choice(list(Marker)) for _ in range(len(mus) - 1)))


def random_entries(rng, bounds, min_length=1, max_length=8):
    return tuple(rng.randint(1, bounds.max_entry) for _ in range(rng.randint(min_length, max_length)))


def seg_inputs(mus):
    return {"mus": [list(mu) for mu in mus]}


# Replacement identities
def check_replacement_difference(trials, seed=DEFAULT_SEED, bounds=GeneratorBounds()) -> CheckReport:
    """N[mu1,1,1,mu2] - N[mu1,2,mu2] == N[mu1^-] N[^-mu2] on random segments."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    report = CheckReport("replacement_difference", metadata={"seed": seed, "trials": trials})
    for _ in range(trials):
        mu1 = random_segment(rng, bounds)
        mu2 = random_segment(rng, bounds)
        lhs = numerator(mu1 + (1, 1) + mu2) - numerator(mu1 + (2,) + mu2)
        report.check("replacement_difference", seg_inputs((mu1, mu2)), lhs, cf_core.replacement_difference(mu1, mu2))
    return report


def telescoping_sides(mus):
    k = len(mus)
    twos = cf_core.interleave(mus, [Marker.TWO] * (k - 1))
    ones = cf_core.interleave(mus, [Marker.ONEONE] * (k - 1))
    lhs = numerator(twos + (2,)) - numerator(ones)
    rhs = numerator(twos + (1,)) - sum(split.term() for split in cf_core.replacement_splits(mus))
    return lhs, rhs


def check_replacement_telescoping(mu_list) -> CheckReport:
    """All-2 form with an appended 2 against the all-1,1 form, as a telescoping sum."""
    mus = tuple(cf_core.check_segment(mu) for mu in mu_list)
    report = CheckReport("replacement_telescoping")
    lhs, rhs = telescoping_sides(mus)
    report.check("replacement_telescoping", seg_inputs(mus), lhs, rhs)
    return report


def check_replacement_positivity(mu_list) -> CheckReport:
    mus = tuple(cf_core.check_segment(mu) for mu in mu_list)
    report = CheckReport("replacement_positivity")
    lhs, _ = telescoping_sides(mus)
    report.check("replacement_positivity", seg_inputs(mus), lhs, 0, relation=">")
    return report


def prefix_term(mus, alphas, i):
    """N[mu_1, alphas_1, .., mu_i^-] for 0-based segment i."""
    return continuant(cf_core.tail_deleted(cf_core.interleave(mus[:i + 1], alphas[:i])))


def suffix_term(mus, alphas, i):
    """N[^-mu_{i+1}, alphas_{i+1}, .., mu_k] for 0-based segment i."""
    return continuant(cf_core.head_deleted(cf_core.interleave(mus[i + 1:], alphas[i + 1:])))


@dataclass(frozen=True)
class MixedDecomposition:
    difference: int
    end_one: int
    d1: int
    d2: int
    d1_sum: int
    d2_sum: int


def mixed_decomposition(seg: SegmentedCF) -> MixedDecomposition:
    mus = seg.mus
    alphas = seg.alphas
    flipped = tuple(a.flip() for a in alphas)
    lifted = tuple(Marker.TWO for _ in alphas)
    n_alpha = numerator(seg.flatten())
    n_lifted = numerator(cf_core.interleave(mus, lifted))
    n_flipped = numerator(cf_core.interleave(mus, flipped))
    d1_sum = 0
    d2_sum = 0
    for i, a in enumerate(alphas):
        if a is Marker.ONEONE:
            d1_sum += prefix_term(mus, alphas, i) * suffix_term(mus, lifted, i)
        else:
            d2_sum -= prefix_term(mus, lifted, i) * suffix_term(mus, flipped, i)
    return MixedDecomposition(
        difference=numerator(seg.flatten((2,))) - n_flipped,
        end_one=numerator(seg.flatten((1,))),
        d1=n_alpha - n_lifted,
        d2=n_lifted - n_flipped,
        d1_sum=d1_sum,
        d2_sum=d2_sum,
    )


def check_mixed_replacements(seg: SegmentedCF) -> CheckReport:
    """Appended 2 beats any mix of replacements, with the difference split as D = D1 + D2."""
    report = CheckReport("mixed_replacements")
    inputs = seg.to_dict()
    dec = mixed_decomposition(seg)
    report.check("positive_difference", inputs, dec.difference, 0, relation=">")
    report.check("d1_as_sum", inputs, dec.d1, dec.d1_sum)
    report.check("d2_as_sum", inputs, dec.d2, dec.d2_sum)
    report.check("difference_split", inputs, dec.difference, dec.end_one + dec.d1_sum + dec.d2_sum)
    return report


def run_suite(name, check, make_instance, trials, seed, bounds):
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    report = CheckReport(name, metadata={"seed": seed, "trials": trials})
    for _ in range(trials):
        report = report.merge(check(make_instance(rng, bounds)))
    return report


def telescoping_suite(trials, seed=DEFAULT_SEED, bounds=GeneratorBounds()):
    return run_suite("replacement_telescoping", check_replacement_telescoping, random_mus, trials, seed, bounds)


def positivity_suite(trials, seed=DEFAULT_SEED, bounds=GeneratorBounds()):
    return run_suite("replacement_positivity", check_replacement_positivity, random_mus, trials, seed, bounds)


def mixed_replacements_suite(trials, seed=DEFAULT_SEED, bounds=GeneratorBounds()):
    return run_suite("mixed_replacements", check_mixed_replacements, random_segmented, trials, seed, bounds)


# Basic identities
def check_basic_identities(trials, seed=DEFAULT_SEED, bounds=GeneratorBounds()) -> CheckReport:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    report = CheckReport("basic_identities", metadata={"seed": seed, "trials": trials})
    for _ in range(trials):
        a = random_entries(rng, bounds)
        n = len(a)
        inputs = {"entries": list(a)}
        report.check("head_recursion", inputs, cf_core.numerator_from_head(a), numerator(a))
        if n >= 2:
            report.check("tail_recursion", inputs, numerator(a), a[-1] * continuant(a[:-1]) + continuant(a[:-2]))
        report.check("trailing_one_one", inputs, cf_core.convergent(a + (1, 1)), cf_core.convergent(a + (2,)))
        report.check("leading_one_one", inputs, numerator((1, 1) + a), numerator((2,) + a))
        report.check("reversal", inputs, numerator(cf_core.reverse(a)), numerator(a))

        cut = rng.randint(1, n)
        interior = a[:cut] + cf_core.ZERO_PAIR + a[cut:]
        if cut < n:
            report.check("interior_zero_pair", {"entries": list(interior)},
                         cf_core.convergent(interior), cf_core.convergent(a))
        report.check("leading_zero_pair", inputs, cf_core.convergent(cf_core.ZERO_PAIR + a), cf_core.convergent(a))
        trailing = a + cf_core.ZERO_PAIR
        report.check("trailing_zero_pair", inputs, cf_core.zero_pair_reversal_numerator(trailing), numerator(a))
        report.check("trailing_zero_pair_raw", inputs, continuant(trailing), numerator(a))
        report.check("strip_keeps_numerator", {"entries": list(interior)},
                     numerator(cf_core.strip_zero_pairs(interior)), continuant(interior))

        terms = cf_core.tail_identity_terms(a)
        report.check("end_two_sum", inputs, terms.n2, terms.n1 + terms.n0)
        report.check("end_one_double", inputs, 2 * terms.n1, terms.n2 + terms.nminus)

        for i in range(1, n):
            report.check("grafting", {"entries": list(a), "split": i}, cf_core.graft_numerator(a, i), numerator(a))

        pos = rng.randrange(n)
        bumped = a[:pos] + (a[pos] + 1,) + a[pos + 1:]
        report.check("monotone", {"entries": list(a), "position": pos}, numerator(bumped), numerator(a), relation=">")
    return report


# Markov sweeps
def markov_row(q):
    return [(p, q, snake.markov_number(snake.RationalIndex(p, q))) for p in range(1, q)]


def resolve_jobs(jobs):
    if not jobs:
        return multiprocessing.cpu_count()
    return jobs


def markov_table(q_max, jobs=1) -> dict:
    """m_{p/q} for every 1 <= p < q <= q_max, from the snake graph continued fractions."""
    qs = list(range(2, q_max + 1))
    jobs = resolve_jobs(jobs)
    if jobs > 1 and len(qs) > 1:
        with multiprocessing.Pool(jobs) as pool:
            rows = pool.map(markov_row, qs)
    else:
        rows = [markov_row(q) for q in qs]
    table = {}
    for row in rows:
        for p, q, value in row:
            table[(p, q)] = value
    logging.info(f"computed {len(table)} values up to q={q_max} with {jobs} job(s)")
    return table


def cf_markers(p, q):
    return snake.replaceable_entries(snake.cf_from_snake(snake.build_snake(snake.RationalIndex(p, q))))


def check_aligned_pair(report, larger, smaller):
    big = cf_markers(*larger)
    small = cf_markers(*smaller)
    inputs = {"larger": f"{larger[0]}/{larger[1]}", "smaller": f"{smaller[0]}/{smaller[1]}"}
    seg = cf_core.align_markers(big, small)
    report.check("aligned_larger", inputs, cf_core.markers_to_entries(big),
                 cf_core.strip_zero_pairs(seg.to_cf((2,))).entries)
    report.check("aligned_smaller", inputs, cf_core.markers_to_entries(small),
                 cf_core.strip_zero_pairs(seg.flipped().to_cf()).entries)
    sub = check_mixed_replacements(seg)
    report.cases_run += sub.cases_run
    for failure in sub.failures:
        report.failures.append({**failure, "inputs": {**inputs, **failure["inputs"]}})


def sweep_ordering(q_max, include_noncoprime=False, jobs=1, decompose=False, table=None) -> CheckReport:
    """m_{p/q} < m_{p/(q+1)} and, when p+1 < q, m_{p/q} < m_{(p+1)/q}."""
    if q_max < 2:
        raise ValueError("q_max must be at least 2")
    if table is None:
        table = markov_table(q_max + 1, jobs)
    report = CheckReport("ordering", metadata={"q_max": q_max, "include_noncoprime": include_noncoprime})
    if include_noncoprime:
        report.metadata["noncoprime_value"] = "perfect matchings of the lattice-path snake graph"

    def admissible(p, q):
        return include_noncoprime or math.gcd(p, q) == 1

    for q in range(2, q_max + 1):
        for p in range(1, q):
            if not admissible(p, q):
                continue
            neighbours = [(p, q + 1)]
            if p + 1 < q:
                neighbours.append((p + 1, q))
            for other in neighbours:
                if not admissible(*other):
                    continue
                inputs = {"smaller": f"{p}/{q}", "larger": f"{other[0]}/{other[1]}"}
                report.check("ordering", inputs, table[other], table[(p, q)], relation=">")
                if decompose:
                    check_aligned_pair(report, other, (p, q))
    logging.info(f"ordering sweep to q={q_max}: {report.cases_run} cases, {len(report.failures)} failures")
    return report


def sweep_conjectures(q_max, i_max, jobs=1, table=None) -> CheckReport:
    """Fixed numerator and fixed denominator orderings over coprime indices."""
    if q_max < 1 or i_max < 1:
        raise ValueError("bounds must be at least 1")
    if table is None:
        table = markov_table(q_max, jobs)
    report = CheckReport("conjectures", metadata={"q_max": q_max, "i_max": i_max})
    for q in range(2, q_max + 1):
        for p in range(1, q):
            if math.gcd(p, q) != 1:
                continue
            for i in range(1, i_max + 1):
                if q + i <= q_max and math.gcd(q + i, p) == 1:
                    report.check("fixed_numerator", {"smaller": f"{p}/{q}", "larger": f"{p}/{q + i}"},
                                 table[(p, q + i)], table[(p, q)], relation=">")
                if p + i < q and math.gcd(q, p + i) == 1:
                    report.check("fixed_denominator", {"smaller": f"{p}/{q}", "larger": f"{p + i}/{q}"},
                                 table[(p + i, q)], table[(p, q)], relation=">")
    logging.info(f"conjecture sweep to q={q_max}, i<={i_max}: {report.cases_run} cases, "
                 f"{len(report.failures)} failures")
    return report


def cross_check_matchings(sum_max, limit=snake.DEFAULT_TILE_LIMIT) -> CheckReport:
    """Brute-force matchings == continued-fraction numerator (== tree value when coprime)."""
    if 2 * sum_max - 3 > limit:
        raise ValueError(f"p+q up to {sum_max} needs {2 * sum_max - 3} tiles, above the limit of {limit}")
    report = CheckReport("matchings", metadata={"sum_max": sum_max})
    for total in range(3, sum_max + 1):
        for p in range(1, (total + 1) // 2):
            q = total - p
            idx = snake.RationalIndex(p, q)
            g = snake.build_snake(idx)
            cf_value = numerator(snake.cf_from_snake(g))
            brute = snake.count_matchings_bruteforce(g, limit).count
            inputs = {"index": str(idx)}
            report.check("matchings_equal_numerator", inputs, brute, cf_value)
            if idx.coprime:
                report.check("numerator_equals_tree", inputs, cf_value, trees.markov_number_via_tree(p, q))
    logging.info(f"matching cross-check to p+q={sum_max}: {report.cases_run} cases")
    return report
