"""
Penn-Treebank-style constituency trees.

Parses the bracketed parses that accompany every corpus sentence, computes
token spans, and provides the navigation the RTI extractor needs (yields,
labelled ancestors, node paths).
"""

import re
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from src.core.exceptions import EmptyConstituent, EmptyLabel, EmptyTree, UnbalancedBrackets

_TOKEN_RE = re.compile(r"\(|\)|[^()\s]+")
_FUNCTION_TAG_RE = re.compile(r"[-=]")

TRACE_LABEL = "-NONE-"

Span = Tuple[int, int]
NodePath = Tuple[int, ...]


def base_label(label: str) -> str:
    """Strip function tags and indices: NP-SBJ-1 -> NP, NP=2 -> NP.

    Labels starting with a hyphen (-LRB-, -NONE-) are returned unchanged.
    """
    if label.startswith("-"):
        return label
    return _FUNCTION_TAG_RE.split(label, maxsplit=1)[0] or label


@dataclass(frozen=True, eq=False)
class TreeNode:
    """A constituent, or a leaf when it has no children (the label is then the token)."""

    label: str
    children: Tuple["TreeNode", ...] = ()
    span: Span = (0, 0)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def base_label(self) -> str:
        return base_label(self.label)

    @property
    def width(self) -> int:
        return self.span[1] - self.span[0]

    def __repr__(self) -> str:
        return f"TreeNode({self.label!r}, span={self.span})"


@dataclass(frozen=True, eq=False)
class ConstituencyTree:
    """A parsed sentence. Immutable; safe to share across threads."""

    root: TreeNode
    sentence_id: str = ""
    tokens: Tuple[str, ...] = field(init=False)
    _parents: Dict[int, TreeNode] = field(init=False, repr=False)

    def __post_init__(self):
        tokens: List[str] = []
        parents: Dict[int, TreeNode] = {}
        for node, _ in self.iter_nodes():
            if node.is_leaf:
                tokens.append(node.label)
            for child in node.children:
                parents[id(child)] = node
        object.__setattr__(self, "tokens", tuple(tokens))
        object.__setattr__(self, "_parents", parents)

    @property
    def sentence(self) -> str:
        return " ".join(self.tokens)

    def iter_nodes(self) -> Iterator[Tuple[TreeNode, NodePath]]:
        """Yield (node, path) in pre-order; a path is the child indices from the root."""
        stack: List[Tuple[TreeNode, NodePath]] = [(self.root, ())]
        while stack:
            node, path = stack.pop()
            yield node, path
            for index in range(len(node.children) - 1, -1, -1):
                stack.append((node.children[index], path + (index,)))

    def node_at(self, path: NodePath) -> TreeNode:
        node = self.root
        for index in path:
            node = node.children[index]
        return node

    def parent_of(self, node: TreeNode) -> Optional[TreeNode]:
        return self._parents.get(id(node))

    def ancestors(self, node: TreeNode) -> Iterator[TreeNode]:
        """Strict ancestors, innermost first."""
        parent = self.parent_of(node)
        while parent is not None:
            yield parent
            parent = self.parent_of(parent)


def _byte_offset(text: str, char_offset: int) -> int:
    return len(text[:char_offset].encode("utf-8"))


def parse_bracketed(text: str, sentence_id: str = "") -> ConstituencyTree:
    """Parse one bracketed tree such as ``(NP (DT the) (NN dog))``.

    A single unlabelled wrapper around the root, ``( (S ...) )``, is removed.
    Raises UnbalancedBrackets, EmptyLabel, EmptyTree or EmptyConstituent with
    the byte offset of the fault.
    """
    tokens = [(m.group(), m.start()) for m in _TOKEN_RE.finditer(text)]
    end_of_input = _byte_offset(text, len(text))
    if not tokens:
        raise EmptyTree("empty tree", end_of_input)

    # Each frame: [label or None for the root wrapper, children, opening offset]
    stack: List[list] = []
    root: Optional[TreeNode] = None
    leaf_count = 0
    i = 0

    while i < len(tokens):
        value, pos = tokens[i]

        if root is not None:
            raise UnbalancedBrackets("unexpected content after the tree", _byte_offset(text, pos))

        if value == "(":
            if i + 1 >= len(tokens):
                raise UnbalancedBrackets("unclosed bracket at end of input", end_of_input)
            following, _ = tokens[i + 1]
            if following == ")":
                raise EmptyLabel("constituent without a label", _byte_offset(text, pos))
            if following == "(":
                if stack:
                    raise EmptyLabel("constituent without a label", _byte_offset(text, pos))
                stack.append([None, [], pos])
                i += 1
                continue
            stack.append([following, [], pos])
            i += 2
            continue

        if value == ")":
            if not stack:
                raise UnbalancedBrackets("unexpected ')'", _byte_offset(text, pos))
            label, children, open_pos = stack.pop()
            if not children:
                raise EmptyTree("constituent has no children", _byte_offset(text, open_pos))
            if label is None:
                if len(children) != 1:
                    raise EmptyLabel("unlabelled constituent with several children", _byte_offset(text, open_pos))
                node = children[0]
            else:
                if base_label(label) == TRACE_LABEL:
                    raise EmptyConstituent("empty constituent", _byte_offset(text, open_pos))
                node = TreeNode(label, tuple(children), (children[0].span[0], children[-1].span[1]))
            if stack:
                stack[-1][1].append(node)
            else:
                root = node
            i += 1
            continue

        if not stack:
            raise UnbalancedBrackets("token outside brackets", _byte_offset(text, pos))
        stack[-1][1].append(TreeNode(value, (), (leaf_count, leaf_count + 1)))
        leaf_count += 1
        i += 1

    if stack:
        raise UnbalancedBrackets("unclosed bracket at end of input", end_of_input)
    if root is None:
        raise EmptyTree("empty tree", end_of_input)
    return ConstituencyTree(root=root, sentence_id=sentence_id)


def serialize(node: TreeNode) -> str:
    """Bracketed form with single spaces, the inverse of parse_bracketed."""
    if node.is_leaf:
        return node.label
    return "(" + node.label + " " + " ".join(serialize(child) for child in node.children) + ")"


def yield_text(node: TreeNode, tree: ConstituencyTree) -> List[str]:
    """Leaves under node, in order."""
    start, end = node.span
    return list(tree.tokens[start:end])


def ancestors_with_label(node: TreeNode, label: str, tree: ConstituencyTree) -> List[TreeNode]:
    """Strict ancestors labelled ``label`` (function tags ignored), innermost first."""
    return [
        ancestor for ancestor in tree.ancestors(node)
        if ancestor.label == label or ancestor.base_label == label
    ]
