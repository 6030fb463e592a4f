"""The update-repository state machine and its accounting ledger.

A Repository holds an ordered list of role instances (Root, Timestamp,
Snapshot, Target) and accumulates, tick by tick, the bytes and verification
effort a worst-case client pays: one that downloads and verifies every
signature the repository ever publishes.

Semantics worth knowing before reading the code:

* Every role starts with pending = rollover = True, so the first tick
  publishes a root file endorsing all public keys, and every initial
  Target and Snapshot signs once even with no update staged.
* Target roles are the only ones whose pending flag is ever cleared.
  Root, Timestamp and Snapshot stay perpetually pending, which is what
  arms their signature-budget rollover: an exhausted key is detected and
  replaced the moment it would be needed again.
* A Snapshot signs whenever any Target signed this tick; its own pending
  flag is set by staged updates but never consulted or cleared.
* Root-file publication charges the public key of every current role
  (reserve ones included) plus one signature per Root instance.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .algorithms import SignatureAlgorithm


class RoleType(enum.Enum):
    """The four signing roles; no other role kinds exist in this model."""

    ROOT = "Root"
    TIMESTAMP = "Timestamp"
    SNAPSHOT = "Snapshot"
    TARGET = "Target"


@dataclass
class RoleState:
    """One role instance bound to a signature algorithm.

    num_sigs counts signatures made by the current key and resets on
    rollover; lifetime_sigs never resets.  A reserve role keeps its key in
    published root files but is excluded from routine signing.
    """

    name: str
    role_type: RoleType
    algorithm: SignatureAlgorithm
    num_sigs: int = 0
    lifetime_sigs: int = 0
    reserve: bool = False
    pending: bool = True
    rollover: bool = True

    def __str__(self) -> str:
        return f"{self.role_type.value} : {self.name} : sigs = {self.num_sigs}"


@dataclass(frozen=True)
class TickReport:
    """Deltas produced by one publish_timestamp call.

    The repository accumulators after the tick equal the accumulators
    before it plus these deltas, exactly (cost included: the per-tick sum
    is what gets added).
    """

    signatures: dict[RoleType, int]
    sig_bytes: int = 0
    pk_bytes: int = 0
    cost: float = 0.0
    rolled_roles: int = 0
    root_published: bool = False

    @property
    def total_signatures(self) -> int:
        return sum(self.signatures.values())


@dataclass(frozen=True)
class LedgerTotals:
    """Read-only snapshot of a repository's accumulated client-side cost."""

    name: str
    sig_bytes: int
    pk_bytes: int
    total_bytes: int
    cost: float
    signatures: int
    rollover_events: int
    root_publications: int


class Repository:
    """Named collection of role instances plus the cumulative ledger.

    Single-threaded: no two operations may run concurrently on the same
    instance.  Distinct repositories are fully independent.
    """

    def __init__(self, name: str):
        self.name = name
        self.roles: list[RoleState] = []
        self.accum_sig_size = 0
        self.accum_pk_size = 0
        self.accum_cost = 0.0
        self.accum_signatures = 0
        self.rollover_events = 0
        self.root_publications = 0
        self.retired_sigs = 0  # lifetime_sigs carried by removed roles
        self.update_root = True  # a fresh repository needs a first root file

    def __str__(self) -> str:
        return self.name

    def add_role(
        self, name: str, role_type: RoleType, algorithm: SignatureAlgorithm
    ) -> None:
        """Append a role instance and flag it (and any same-named sibling of
        the same type) for inclusion in the next root file.

        Duplicate names are permitted.
        """
        self.roles.append(RoleState(name=name, role_type=role_type, algorithm=algorithm))
        self.update_root = True
        for role in self.roles:
            if role.name == name and role.role_type == role_type:
                role.rollover = True
                role.pending = True

    def remove_role(self, name: str) -> int:
        """Remove every role whose name matches; returns the number removed.

        Removed roles' lifetime signature counts move to the retired tally
        so the ledger conservation invariant keeps holding.
        """
        kept = [role for role in self.roles if role.name != name]
        removed = len(self.roles) - len(kept)
        if removed:
            for role in self.roles:
                if role.name == name:
                    self.retired_sigs += role.lifetime_sigs
            self.roles[:] = kept
            self.update_root = True
        return removed

    def set_reserve(self, name: str, flag: bool) -> int:
        """Assign the reserve flag on every matching role; returns match count."""
        matched = 0
        for role in self.roles:
            if role.name == name:
                role.reserve = flag
                matched += 1
        return matched

    def stage_update(self, target_name: str) -> int:
        """Require a signature of every Target named `target_name`.

        If anything matched, every Snapshot role is marked pending as well.
        Returns the number of matching Targets; no cost accrues here.
        """
        matched = 0
        for role in self.roles:
            if role.name == target_name and role.role_type is RoleType.TARGET:
                role.pending = True
                matched += 1
        if matched > 0:
            for role in self.roles:
                if role.role_type is RoleType.SNAPSHOT:
                    role.pending = True
        return matched

    def rollover_check(self) -> int:
        """Stage key replacements: any role already flagged for rollover, or
        whose current key is exhausted while a signature is required of it,
        gets its counter reset and its rollover flag raised.

        Returns the number of roles processed.  publish_timestamp calls this
        internally; it is public so the trigger condition is testable alone.
        """
        rolled = 0
        for role in self.roles:
            if role.rollover or (
                role.num_sigs == role.algorithm.max_sigs and role.pending
            ):
                role.rollover = True
                role.num_sigs = 0
                rolled += 1
        self.rollover_events += rolled
        return rolled

    def publish_timestamp(self) -> TickReport:
        """Advance the repository by one tick and return the tick's deltas.

        Order of play: (1) if any role rolled over or a root update is
        flagged, publish a root file — every role's public key is downloaded
        and every Root instance signs; (2) each pending non-reserve Target
        signs and is cleared; (3) if any Target signed, each non-reserve
        Snapshot signs; (4) each non-reserve Timestamp signs.
        """
        signatures = {role_type: 0 for role_type in RoleType}
        sig_bytes = 0
        pk_bytes = 0
        cost = 0.0

        def sign(role: RoleState) -> None:
            nonlocal sig_bytes, cost
            role.num_sigs += 1
            role.lifetime_sigs += 1
            sig_bytes += role.algorithm.sig_size
            cost += role.algorithm.cost
            signatures[role.role_type] += 1

        rolled = self.rollover_check()
        root_published = False
        if rolled > 0 or self.update_root:
            root_published = True
            for role in self.roles:
                pk_bytes += role.algorithm.pk_size
                if role.role_type is RoleType.ROOT:
                    sign(role)
                role.rollover = False
            self.update_root = False
            self.root_publications += 1

        updates = 0
        for role in self.roles:
            if role.role_type is RoleType.TARGET and role.pending and not role.reserve:
                sign(role)
                role.pending = False
                updates += 1

        if updates > 0:
            for role in self.roles:
                if role.role_type is RoleType.SNAPSHOT and not role.reserve:
                    sign(role)

        for role in self.roles:
            if role.role_type is RoleType.TIMESTAMP and not role.reserve:
                sign(role)

        self.accum_sig_size += sig_bytes
        self.accum_pk_size += pk_bytes
        self.accum_cost += cost
        self.accum_signatures += sum(signatures.values())
        return TickReport(
            signatures=signatures,
            sig_bytes=sig_bytes,
            pk_bytes=pk_bytes,
            cost=cost,
            rolled_roles=rolled,
            root_published=root_published,
        )

    def ledger_totals(self) -> LedgerTotals:
        """Snapshot the accumulated totals; read-only."""
        return LedgerTotals(
            name=self.name,
            sig_bytes=self.accum_sig_size,
            pk_bytes=self.accum_pk_size,
            total_bytes=self.accum_sig_size + self.accum_pk_size,
            cost=self.accum_cost,
            signatures=self.accum_signatures,
            rollover_events=self.rollover_events,
            root_publications=self.root_publications,
        )
