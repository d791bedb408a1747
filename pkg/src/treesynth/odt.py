"""Depth-constrained optimal decision trees.

``fit_optimal`` is a dynamic-programming branch-and-bound learner in the
DL8.5 style: subproblems are row subsets reached by a path of feature
conditions, memoized so that equivalent paths share work.  Subproblem
results are cached only when solved to proven optimality, which keeps the
cache sound regardless of bounding.  ``fit_bruteforce`` is a deliberately
naive enumerator kept as an independent oracle.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .dataset import Dataset


class OdtError(Exception):
    """Invalid learning request (empty data, guard violation, ...)."""


class SearchExhausted(OdtError):
    """Budget ran out before optimality was proven."""


@dataclass(frozen=True)
class Leaf:
    label: int

    @property
    def depth(self) -> int:
        return 0

    @property
    def node_count(self) -> int:
        return 1


@dataclass(frozen=True)
class Branch:
    feature: int
    low: "TreeNode"   # feature = 0 child
    high: "TreeNode"  # feature = 1 child

    @property
    def depth(self) -> int:
        return 1 + max(self.low.depth, self.high.depth)

    @property
    def node_count(self) -> int:
        return 1 + self.low.node_count + self.high.node_count


TreeNode = Leaf | Branch


@dataclass(frozen=True)
class SearchBudget:
    max_depth: int
    node_limit: int | None = None
    time_limit: float | None = None  # seconds

    def __post_init__(self):
        if self.max_depth < 0:
            raise OdtError("max_depth must be >= 0")


@dataclass(frozen=True)
class DecisionTree:
    root: TreeNode
    train_error: int
    realized_depth: int
    proven_optimal: bool = True


def predict(tree: DecisionTree, features: tuple[int, ...]) -> int:
    node = tree.root
    while isinstance(node, Branch):
        if node.feature >= len(features):
            raise OdtError(
                f"feature {node.feature} out of range for width {len(features)}")
        node = node.high if features[node.feature] else node.low
    return node.label


def count_errors(tree: DecisionTree, data: Dataset) -> int:
    """Weighted misclassification count of the tree on the dataset."""
    total = 0
    for r, (bits, label) in enumerate(data.rows()):
        if predict(tree, bits) != label:
            total += data.weights[r] if data.weights else 1
    return total


def collapse(node: TreeNode) -> TreeNode:
    """Bottom-up merge of branches whose children are identical leaves."""
    if isinstance(node, Leaf):
        return node
    low = collapse(node.low)
    high = collapse(node.high)
    if isinstance(low, Leaf) and isinstance(high, Leaf) and low.label == high.label:
        return low
    return Branch(node.feature, low, high)


def to_sexpr(node: TreeNode) -> str:
    if isinstance(node, Leaf):
        return f"(leaf {node.label})"
    return f"(x{node.feature} {to_sexpr(node.low)} {to_sexpr(node.high)})"


class _Search:
    def __init__(self, data: Dataset, budget: SearchBudget):
        self.features = data.features
        self.labels = data.labels
        self.weights = data.weights
        self.num_features = data.num_features
        self.budget = budget
        self.cache: dict[tuple[int, int], tuple[int, TreeNode]] = {}
        self.expansions = 0
        self.deadline = (time.monotonic() + budget.time_limit
                         if budget.time_limit is not None else None)
        self.exhausted = False

    def weight_of(self, mask: int) -> int:
        if self.weights is None:
            return mask.bit_count()
        total = 0
        r = 0
        while mask:
            low = mask & -mask
            total += self.weights[low.bit_length() - 1]
            mask ^= low
        return total

    def leaf_for(self, mask: int) -> tuple[int, Leaf]:
        ones = self.weight_of(mask & self.labels)
        zeros = self.weight_of(mask) - ones
        # majority class, ties to 0
        if ones > zeros:
            return zeros, Leaf(1)
        return ones, Leaf(0)

    def out_of_budget(self) -> bool:
        if self.exhausted:
            return True
        b = self.budget
        if b.node_limit is not None and self.expansions >= b.node_limit:
            self.exhausted = True
        elif self.deadline is not None and time.monotonic() > self.deadline:
            self.exhausted = True
        return self.exhausted

    def solve(self, mask: int, depth: int) -> tuple[int, TreeNode]:
        """Minimum-error tree of depth <= depth for the rows in mask."""
        key = (mask, depth)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        leaf_err, leaf = self.leaf_for(mask)
        if depth == 0 or leaf_err == 0:
            self.cache[key] = (leaf_err, leaf)
            return leaf_err, leaf
        self.expansions += 1
        best_err: int = leaf_err
        best: TreeNode = leaf
        complete = True
        for f in range(self.num_features):
            if self.out_of_budget():
                complete = False
                break
            m1 = mask & self.features[f]
            m0 = mask & ~m1
            if m0 == 0 or m1 == 0:
                continue  # constant feature here; split can never improve
            err0, t0 = self.solve(m0, depth - 1)
            if err0 >= best_err:
                continue
            err1, t1 = self.solve(m1, depth - 1)
            if err0 + err1 < best_err:
                best_err = err0 + err1
                best = Branch(f, t0, t1)
                if best_err == 0:
                    break
        if complete and not self.exhausted:
            self.cache[key] = (best_err, best)
        return best_err, best


def fit_optimal(data: Dataset, budget: SearchBudget) -> DecisionTree:
    """Tree with provably minimal weighted training error at the depth cap.

    Raises SearchExhausted when a node or time limit preempts the proof;
    callers that can use an anytime result may catch it and inspect
    ``exc.tree``.
    """
    if data.num_rows < 1:
        raise OdtError("cannot fit a tree on an empty dataset")
    search = _Search(data, budget)
    err, root = search.solve(data.row_mask, budget.max_depth)
    root = collapse(root)
    tree = DecisionTree(root=root, train_error=err,
                        realized_depth=root.depth,
                        proven_optimal=not search.exhausted)
    if search.exhausted:
        exc = SearchExhausted(
            "search budget exhausted before optimality was proven")
        exc.tree = tree
        raise exc
    return tree


def fit_bruteforce(data: Dataset, budget: SearchBudget) -> DecisionTree:
    """Exhaustive reference learner (no memoization, no bounding, no bitsets)."""
    if data.num_features > 10 or budget.max_depth > 3:
        raise OdtError("brute-force guard: <=10 features and depth <=3 only")
    if data.num_rows < 1:
        raise OdtError("cannot fit a tree on an empty dataset")
    rows = [(bits, label, data.weights[r] if data.weights else 1)
            for r, (bits, label) in enumerate(data.rows())]

    def best_tree(subset, depth):
        ones = sum(w for _, label, w in subset if label == 1)
        zeros = sum(w for _, label, w in subset if label == 0)
        if ones > zeros:
            err, node = zeros, Leaf(1)
        else:
            err, node = ones, Leaf(0)
        if depth == 0 or err == 0:
            return err, node
        for f in range(data.num_features):
            low = [row for row in subset if row[0][f] == 0]
            high = [row for row in subset if row[0][f] == 1]
            if not low or not high:
                continue
            err0, t0 = best_tree(low, depth - 1)
            err1, t1 = best_tree(high, depth - 1)
            if err0 + err1 < err:
                err, node = err0 + err1, Branch(f, t0, t1)
        return err, node

    err, root = best_tree(rows, budget.max_depth)
    root = collapse(root)
    return DecisionTree(root=root, train_error=err, realized_depth=root.depth)
