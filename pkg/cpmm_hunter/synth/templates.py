"""Cross-trading and burn templates, and their state-changing expansions.

Every template sits between an opening buy of token_y with a budget of
token_x and a closing sale of the whole token_y balance. Under plain token
semantics the body moves nothing for good: tokens sent to the pool come back,
or stay there as input of the closing sale.
"""

from decimal import Decimal
from fractions import Fraction
from typing import List, Sequence, Tuple

from cpmm_hunter.execution.models import (
    PAIR,
    SELF,
    BalanceOfPair,
    BalanceOfSelf,
    BurnCall,
    BurnSupplyFormula,
    Call,
    ConstantArg,
    FeeAdjusted,
    HookCall,
    PairBalanceMinusOne,
    SkimCall,
    SwapCall,
    SymbolicArg,
    SyncCall,
    TransferCall,
)
from cpmm_hunter.ledger.ledger import balance_of
from cpmm_hunter.ledger.models import TokenSpec
from cpmm_hunter.synth.models import Segment, Template
from cpmm_hunter.world import WorldState

POSITIONS = ("repeat", "before_sale")


def _fee_adjusted(spec: TokenSpec, arg: SymbolicArg) -> SymbolicArg:
    if spec.has_exclusive_fee:
        return FeeAdjusted(token=spec.id, inner=arg)
    return arg


def transfer_arguments(spec: TokenSpec) -> List[Tuple[str, SymbolicArg]]:
    token = spec.id
    args: List[Tuple[str, SymbolicArg]] = [
        ("self", BalanceOfSelf(token=token)),
        ("pair", BalanceOfPair(token=token)),
        ("zero", ConstantArg(value=0)),
    ]
    return [(label, _fee_adjusted(spec, arg)) for label, arg in args]


def burn_arguments(spec: TokenSpec) -> List[Tuple[str, SymbolicArg]]:
    token = spec.id
    return [
        ("pair-1", PairBalanceMinusOne(token=token)),
        ("supply", BurnSupplyFormula(token=token)),
    ]


def _bodies(pool: str, spec: TokenSpec) -> List[Tuple[str, List[Segment]]]:
    token = spec.id
    args = transfer_arguments(spec)

    def to(account: str, amount: SymbolicArg) -> TransferCall:
        return TransferCall(token=token, to=account, amount=amount)

    bodies: List[Tuple[str, List[Segment]]] = []
    for label, amount in args:
        bodies.append((f"self_transfer/{label}", [Segment(calls=[to(SELF, amount)], repeatable=True)]))
    for label, amount in args:
        round_trip = [to(PAIR, amount), SkimCall(pool=pool, to=SELF)]
        bodies.append((f"round_trip/{label}", [Segment(calls=round_trip, repeatable=True)]))
    for label, amount in args:
        skim_loop = [
            Segment(calls=[to(PAIR, amount)]),
            Segment(calls=[SkimCall(pool=pool, to=PAIR)], repeatable=True),
            Segment(calls=[SkimCall(pool=pool, to=SELF)]),
        ]
        bodies.append((f"skim_loop/{label}", skim_loop))
    for label, amount in args:
        # The excess left in the pool is priced as input of the closing sale.
        leave_in_pool = [
            Segment(calls=[to(PAIR, amount)]),
            Segment(calls=[SkimCall(pool=pool, to=PAIR)], repeatable=True),
        ]
        bodies.append((f"leave_in_pool/{label}", leave_in_pool))

    if spec.public_burn is not None:
        for holder in (SELF, PAIR):
            for label, amount in burn_arguments(spec):
                bodies.append(
                    (
                        f"burn_{holder}/{label}",
                        [
                            Segment(calls=[BurnCall(token=token, from_=holder, amount=amount)], repeatable=True),
                            Segment(calls=[SyncCall(pool=pool)]),
                        ],
                    )
                )
    return bodies


def enumerate_templates(world: WorldState, pool: str, spec: TokenSpec) -> List[Template]:
    """Base templates for selling ``spec``'s token into ``pool``.

    Four cross-trading bodies times three transfer amounts, plus two burn
    bodies times two burn amounts when the token can be burned.

    Args:
        world: World containing the pool
        pool: Pool id
        spec: Token traded against the pool's token_x

    Returns:
        Templates in exploration order
    """
    state = world.pool(pool)
    postlude = SwapCall(
        pool=pool,
        input_token=spec.id,
        amount=_fee_adjusted(spec, BalanceOfSelf(token=spec.id)),
        to=SELF,
    )
    return [
        Template(id=name, pool=pool, token_x=state.token_x, segments=segments, postlude=postlude)
        for name, segments in _bodies(pool, spec)
    ]


def state_changing_calls(spec: TokenSpec) -> List[Call]:
    """Small transfers plus every no-argument hook of the token."""
    calls: List[Call] = [
        TransferCall(token=spec.id, to=to, amount=ConstantArg(value=value))
        for to in (SELF, PAIR)
        for value in (0, 1)
    ]
    calls.extend(HookCall(token=spec.id, name=hook.name) for hook in spec.hooks)
    return calls


def _insert(template: Template, call: Call, position: str) -> List[Segment]:
    segments = list(template.segments)
    if position == "before_sale":
        return segments + [Segment(calls=[call])]
    index = max(i for i, segment in enumerate(segments) if segment.repeatable)
    repeated = segments[index]
    segments[index] = Segment(calls=[*repeated.calls, call], repeatable=True)
    return segments


def expand_with_state_changing(template: Template, spec: TokenSpec) -> List[Template]:
    """Variants of ``template`` with one state-changing call added.

    Each call is either appended to the repeatable segment or placed just
    before the closing sale.
    """
    variants = []
    for call in state_changing_calls(spec):
        for position in POSITIONS:
            name = f"{call.describe()}@{position}"
            variants.append(
                template.model_copy(
                    update={
                        "id": f"{template.id}+{name}",
                        "segments": _insert(template, call, position),
                        "expansion": name,
                    }
                )
            )
    return variants


def compute_budgets(
    world: WorldState, pool: str, attacker: str, fractions: Sequence[Decimal]
) -> List[int]:
    """Opening-buy sizes: fractions of reserve_x the attacker can afford, ascending."""
    state = world.pool(pool)
    available = balance_of(world, state.token_x, attacker)
    budgets = set()
    for fraction in fractions:
        amount = int(state.reserve_x * Fraction(fraction))
        if 0 < amount <= available:
            budgets.add(amount)
    return sorted(budgets)
