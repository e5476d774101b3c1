# File: schemadl/models/frame.py
"""
Frame knowledge base model: frames with super classes and member slots
whose value classes are built from frame names with UNION, INTERSECTION
and NOT.
"""
from dataclasses import dataclass, field
from typing import FrozenSet, Optional, Tuple


class SlotConstraint:
    """Base class of value class expressions"""

    def frame_names(self) -> FrozenSet[str]:
        raise NotImplementedError


@dataclass(frozen=True)
class FrameRef(SlotConstraint):
    name: str

    def frame_names(self):
        return frozenset([self.name])

    def to_text(self):
        return self.name


@dataclass(frozen=True)
class Intersection(SlotConstraint):
    left: SlotConstraint
    right: SlotConstraint

    def frame_names(self):
        return self.left.frame_names() | self.right.frame_names()

    def to_text(self):
        return f"(INTERSECTION {self.left.to_text()} {self.right.to_text()})"


@dataclass(frozen=True)
class Union(SlotConstraint):
    left: SlotConstraint
    right: SlotConstraint

    def frame_names(self):
        return self.left.frame_names() | self.right.frame_names()

    def to_text(self):
        return f"(UNION {self.left.to_text()} {self.right.to_text()})"


@dataclass(frozen=True)
class Not(SlotConstraint):
    operand: SlotConstraint

    def frame_names(self):
        return self.operand.frame_names()

    def to_text(self):
        return f"(NOT {self.operand.to_text()})"


@dataclass(frozen=True)
class SlotSpec:
    """
    A member slot of a frame.

    Attributes:
        slot: Slot name
        value_class: Constraint on every slot filler
        min_card: Optional positive minimum number of fillers
        max_card: Optional positive maximum number of fillers
    """
    slot: str
    value_class: SlotConstraint
    min_card: Optional[int] = None
    max_card: Optional[int] = None


@dataclass(frozen=True)
class FrameDefinition:
    """
    A frame definition, or a frame expression when used as a query.

    Attributes:
        name: Frame name (None for a bare frame expression)
        supers: Super frame names
        slots: Member slots
    """
    name: Optional[str]
    supers: Tuple[str, ...] = ()
    slots: Tuple[SlotSpec, ...] = ()

    @property
    def is_empty(self):
        return not self.supers and not self.slots

    def referenced_frames(self):
        names = set(self.supers)
        for slot in self.slots:
            names |= slot.value_class.frame_names()
        return names


@dataclass(frozen=True)
class FrameKB:
    """
    A frame knowledge base.

    Attributes:
        kb_name: Name after `in KB`
        frames: Frame definitions in file order
        frame_names: Defined frames plus frames only used as value classes
        slot_names: Every slot name used
    """
    kb_name: str
    frames: Tuple[FrameDefinition, ...] = ()
    frame_names: FrozenSet[str] = field(default=frozenset())
    slot_names: FrozenSet[str] = field(default=frozenset())

    def definition(self, name):
        for frame in self.frames:
            if frame.name == name:
                return frame
        return None

    @property
    def external_frames(self):
        """Frame names used as value classes without a definition of their own"""
        return self.frame_names - {frame.name for frame in self.frames}

    def __repr__(self):
        return f"<FrameKB {self.kb_name} frames={len(self.frames)}>"
