# File: schemadl/services/search_engine.py
"""
Bounded finite-model search.

For each domain size the knowledge base and goal are compiled to CNF over
membership variables c[d][A] and r[d][e][P]; number restrictions become
cardinality constraints over successor rows. Sizes are tried in ascending
order and the first witness wins.
"""
import logging
import time
from threading import Timer

from pysat.card import CardEnc, EncType
from pysat.formula import IDPool
from pysat.solvers import Solver

from schemadl.config import Config
from schemadl.models.concept import (
    And, AtLeast, AtMost, Atomic, Bottom, Exists, Forall, NegAtomic, Or, Top,
    complement, conjunction
)
from schemadl.models.interpretation import Interpretation
from schemadl.models.verdict import Outcome, ReasoningVerdict
from schemadl.services.evaluation_service import EvaluationService

logger = logging.getLogger(__name__)


class GridEncoder:
    """
    Compiles a knowledge base and a goal over domain {0..size-1} to CNF.

    Concept expressions are all in negation normal form, so each
    sub-expression gets a literal that only implies its meaning at an
    individual; that is enough for satisfiability to coincide.
    """

    def __init__(self, kb, goal, size, encoding=EncType.seqcounter):
        self.kb = kb
        self.goal = goal
        self.size = size
        self.encoding = encoding
        self.pool = IDPool()
        self.clauses = []
        self._memo = {}
        self.true = self.pool.id(('true',))
        self.clauses.append([self.true])

    def concept_var(self, individual, name):
        return self.pool.id(('c', individual, name))

    def role_var(self, source, target, name):
        return self.pool.id(('r', source, target, name))

    def row(self, role, individual):
        """Variables for the R-successors of an individual, one per candidate"""
        if role.inverted:
            return [self.role_var(e, individual, role.base) for e in range(self.size)]
        return [self.role_var(individual, e, role.base) for e in range(self.size)]

    def encode(self):
        # Number the signature first so that variable ids do not depend on assertions
        for name in sorted(self.kb.concepts):
            for d in range(self.size):
                self.concept_var(d, name)
        for name in sorted(self.kb.roles):
            for a in range(self.size):
                for b in range(self.size):
                    self.role_var(a, b, name)

        for assertion in self.kb.assertions:
            for d in range(self.size):
                self.clauses.append([-self.concept_var(d, assertion.lhs), self.literal(assertion.rhs, d)])

        # Symmetry breaking: individual 0 is in the goal
        self.clauses.append([self.literal(self.goal, 0)])
        return self.clauses

    def literal(self, expr, d):
        key = (expr, d)
        if key not in self._memo:
            self._memo[key] = self._literal(expr, d)
        return self._memo[key]

    def _literal(self, expr, d):
        if isinstance(expr, Top):
            return self.true
        if isinstance(expr, Bottom):
            return -self.true
        if isinstance(expr, Atomic):
            return self.concept_var(d, expr.name)
        if isinstance(expr, NegAtomic):
            return -self.concept_var(d, expr.name)

        x = self.pool.id(('x', expr, d))
        if isinstance(expr, And):
            for op in expr.operands:
                self.clauses.append([-x, self.literal(op, d)])
        elif isinstance(expr, Or):
            self.clauses.append([-x] + [self.literal(op, d) for op in expr.operands])
        elif isinstance(expr, Forall):
            for e, edge in enumerate(self.row(expr.role, d)):
                self.clauses.append([-x, -edge, self.literal(expr.filler, e)])
        elif isinstance(expr, Exists):
            choices = []
            for e, edge in enumerate(self.row(expr.role, d)):
                choice = self.pool.id(('w', expr, d, e))
                self.clauses.append([-choice, edge])
                self.clauses.append([-choice, self.literal(expr.filler, e)])
                choices.append(choice)
            self.clauses.append([-x] + choices)
        elif isinstance(expr, AtLeast):
            self._at_least(x, self.row(expr.role, d), expr.n)
        elif isinstance(expr, AtMost):
            self._at_most(x, self.row(expr.role, d), expr.n)
        else:
            raise TypeError(f"unsupported concept expression {expr!r}")
        return x

    def _at_least(self, guard, lits, bound):
        if bound <= 0:
            return
        if bound > len(lits):
            self.clauses.append([-guard])
        elif bound == 1:
            self.clauses.append([-guard] + lits)
        else:
            cnf = CardEnc.atleast(lits=lits, bound=bound, vpool=self.pool, encoding=self.encoding)
            self.clauses.extend([-guard] + clause for clause in cnf.clauses)

    def _at_most(self, guard, lits, bound):
        if bound >= len(lits):
            return
        if bound == 0:
            self.clauses.extend([-guard, -lit] for lit in lits)
        else:
            cnf = CardEnc.atmost(lits=lits, bound=bound, vpool=self.pool, encoding=self.encoding)
            self.clauses.extend([-guard] + clause for clause in cnf.clauses)

    def decode(self, model):
        """Read an interpretation off a satisfying assignment"""
        positive = {lit for lit in model if lit > 0}
        concepts = {
            name: {d for d in range(self.size) if self.concept_var(d, name) in positive}
            for name in self.kb.concepts
        }
        roles = {
            name: {
                (a, b) for a in range(self.size) for b in range(self.size)
                if self.role_var(a, b, name) in positive
            }
            for name in self.kb.roles
        }
        return Interpretation(self.size, concepts, roles)


class ModelSearchEngine:
    """Service for bounded finite-model search"""

    @staticmethod
    def find_model(kb, goal, budget, app_config=Config):
        """
        Look for a finite model of kb in which goal is nonempty.

        Sizes budget.min_size..budget.max_size are searched in ascending order;
        the search for each size is complete, and the same inputs always give
        the same verdict and witness.

        Args:
            kb: KnowledgeBase
            goal: ConceptExpr over kb's signature
            budget: SearchBudget
            app_config: Configuration (solver name, encoding, domain limit)

        Returns:
            ReasoningVerdict

        Raises:
            UnknownSymbolError: If goal mentions symbols outside kb's signature
            InvalidBudgetError: If the budget is invalid
        """
        budget.validate(app_config.MAX_DOMAIN_SIZE)
        kb.check_concept(goal)
        encoding = getattr(EncType, app_config.CARD_ENCODING)

        started = time.monotonic()
        last_completed = budget.min_size - 1
        for size in range(budget.min_size, budget.max_size + 1):
            remaining = budget.time_limit - (time.monotonic() - started)
            if remaining <= 0:
                return _timed_out(last_completed)

            encoder = GridEncoder(kb, goal, size, encoding)
            clauses = encoder.encode()
            logger.debug("Size %d: %d variables, %d clauses", size, encoder.pool.top, len(clauses))

            # encoding time counts against the limit
            remaining = budget.time_limit - (time.monotonic() - started)
            if remaining <= 0:
                logger.info("Time limit reached while encoding size %d", size)
                return _timed_out(last_completed)

            status, model = _solve(clauses, remaining, app_config.SAT_SOLVER)
            if status is None:
                logger.info("Search interrupted at size %d", size)
                return _timed_out(last_completed)
            if status:
                witness = encoder.decode(model)
                _check_witness(kb, goal, witness)
                logger.info("Witness of size %d found for %s", size, goal)
                return ReasoningVerdict(
                    Outcome.WITNESS_FOUND,
                    size,
                    witness,
                    caveat=(
                        f"A finite model of size {size} has a nonempty goal extension; "
                        f"the goal is finitely consistent and therefore consistent."
                    )
                )
            last_completed = size

        logger.info("No model with nonempty %s up to size %d", goal, budget.max_size)
        return ReasoningVerdict(
            Outcome.NO_MODEL_UP_TO,
            budget.max_size,
            caveat=(
                f"No model of size {budget.min_size}..{budget.max_size} has a nonempty "
                f"goal extension; larger and infinite models are not ruled out."
            )
        )

    @staticmethod
    def subsumption_counterexample(kb, sub, sup, budget, app_config=Config):
        """
        Search for a finite model with an instance of sub outside sup.

        A witness refutes sub ⊑ sup (finitely and unrestrictedly, since a
        finite model is a model); NoModelUpTo is evidence up to the bound.

        Raises:
            InexpressibleNegationError: If the complement of sup leaves the language
            UnknownSymbolError: If sub or sup mention unknown symbols
        """
        kb.check_concept(sub)
        kb.check_concept(sup)
        goal = conjunction(sub, complement(sup))
        verdict = ModelSearchEngine.find_model(kb, goal, budget, app_config)

        if verdict.outcome == Outcome.WITNESS_FOUND:
            caveat = (
                f"Refuted: a model of size {verdict.bound} has an instance of {sub} "
                f"outside {sup}."
            )
        elif verdict.outcome == Outcome.NO_MODEL_UP_TO:
            caveat = (
                f"{sub} is subsumed by {sup} in every model of size up to "
                f"{verdict.bound}; this is evidence, not a proof, beyond that bound."
            )
        else:
            caveat = verdict.caveat
        return verdict.replace(caveat=caveat)


def _solve(clauses, remaining, solver_name):
    """Solve with a wall-clock limit; status None means interrupted"""
    with Solver(name=solver_name, bootstrap_with=clauses) as solver:
        timer = Timer(remaining, solver.interrupt)
        timer.start()
        try:
            status = solver.solve_limited(expect_interrupt=True)
        finally:
            timer.cancel()
        model = solver.get_model() if status else None
    return status, model


def _check_witness(kb, goal, witness):
    report = EvaluationService.is_model(kb, witness)
    if not report.ok or not EvaluationService.evaluate_concept(goal, witness):
        raise RuntimeError(f"decoded witness fails its own check: {report.rules()}")


def _timed_out(last_completed):
    return ReasoningVerdict(
        Outcome.TIMED_OUT,
        last_completed,
        caveat=(
            f"Time limit reached; sizes up to {last_completed} were searched "
            f"completely and nothing is claimed beyond them."
        )
    )
