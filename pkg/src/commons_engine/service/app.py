"""HTTP JSON API over the engine.

Every read is a pure function of (event log, query, now); every write is an
engine command that durably appends before the response is sent. Mutating
requests accept an optional ``at`` timestamp (epoch ms) which defaults to
the server clock; in simulation mode ``at`` is mandatory so runs stay
deterministic.
"""

from __future__ import annotations

import dataclasses
import threading
from contextlib import asynccontextmanager
from typing import Any, Optional

from fastapi import Depends, FastAPI, Header, HTTPException, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel, Field

from .. import things as things_math
from ..config import HouseConfig
from ..engine import Engine
from ..errors import (
    CommonsError,
    CorruptLog,
    DuplicateAccountName,
    DuplicateHouse,
    DuplicateName,
    DuplicateResident,
    ProposalClosed,
    StoreUnavailable,
    UnknownAccount,
    UnknownChore,
    UnknownHouse,
    UnknownProposal,
    UnknownResident,
    UnknownVoter,
)

NOT_FOUND = (UnknownHouse, UnknownResident, UnknownChore, UnknownProposal,
             UnknownAccount, UnknownVoter)
CONFLICT = (DuplicateHouse, DuplicateResident, DuplicateName,
            DuplicateAccountName, ProposalClosed)
SERVER_SIDE = (CorruptLog, StoreUnavailable)


def _status_for(exc: CommonsError) -> int:
    if isinstance(exc, NOT_FOUND):
        return 404
    if isinstance(exc, CONFLICT):
        return 409
    if isinstance(exc, SERVER_SIDE):
        return 503
    return 400


class CreateHouseBody(BaseModel):
    id: str
    config: Optional[dict[str, Any]] = None
    chores: list[dict[str, str]] = Field(default_factory=list)
    buylist: list[dict[str, Any]] = Field(default_factory=list)
    at: Optional[int] = None


class ResidentBody(BaseModel):
    resident: str
    at: Optional[int] = None


class ClaimBody(BaseModel):
    claimant: str
    at: Optional[int] = None


class BallotBody(BaseModel):
    voter: str
    direction: str
    at: Optional[int] = None


class PreferenceBody(BaseModel):
    resident: str
    preferred: str
    deprioritized: str
    at: Optional[int] = None


class ExemptionBody(BaseModel):
    resident: str
    month: str
    from_day: int
    to_day: int
    at: Optional[int] = None


class ChoreAmendmentBody(BaseModel):
    action: str
    proposer: str
    name: Optional[str] = None
    description: Optional[str] = None
    chore: Optional[str] = None
    at: Optional[int] = None


class KarmaBody(BaseModel):
    giver: str
    recipient: str
    source: str = ""
    at: Optional[int] = None


class ChallengeBody(BaseModel):
    challenger: str
    challengee: str
    stated_hearts: Optional[float] = None
    reason: str = ""
    at: Optional[int] = None


class PurchaseBody(BaseModel):
    proposer: str
    item: str
    price_cents: int
    account: str
    at: Optional[int] = None


class AccountAmendmentBody(BaseModel):
    action: str
    proposer: str
    name: Optional[str] = None
    account: Optional[str] = None
    monthly_refill_cents: Optional[int] = None
    at: Optional[int] = None


class BuylistAmendmentBody(BaseModel):
    action: str
    proposer: str
    name: Optional[str] = None
    vendor_hint: str = ""
    typical_price_cents: int = 0
    item: Optional[str] = None
    at: Optional[int] = None


class TickBody(BaseModel):
    at: Optional[int] = None


def _proposal_view(proposal, now: int) -> dict[str, Any]:
    up = sum(1 for d, _ in proposal.ballots.values() if d == "up")
    down = sum(1 for d, _ in proposal.ballots.values() if d == "down")
    return {
        "id": proposal.id,
        "kind": proposal.kind,
        "proposer": proposal.proposer,
        "opened_at": proposal.opened_at,
        "due_at": proposal.due_at,
        "remaining_ms": max(0, proposal.due_at - now) if not proposal.resolved else 0,
        "min_upvotes": proposal.min_upvotes,
        "require_majority": proposal.require_majority,
        "payload": proposal.payload,
        "upvotes": up,
        "downvotes": down,
        "resolved": proposal.resolved,
        "outcome": proposal.outcome,
    }


def create_app(engine: Engine, api_key: str | None = None,
               simulation_mode: bool = False,
               tick_seconds: float = 1.0,
               run_scheduler: bool = False) -> FastAPI:
    stop = threading.Event()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        thread = None
        if run_scheduler and not simulation_mode:
            def loop():
                while not stop.wait(tick_seconds):
                    engine.run_scheduler_tick(engine.now())
            thread = threading.Thread(target=loop, daemon=True, name="scheduler")
            thread.start()
        yield
        stop.set()
        if thread is not None:
            thread.join(timeout=2.0)

    app = FastAPI(title="commons-engine", lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(CommonsError)
    async def commons_error_handler(request: Request, exc: CommonsError):
        from fastapi.responses import JSONResponse
        return JSONResponse(
            status_code=_status_for(exc),
            content={"error": exc.__class__.__name__, "detail": str(exc)},
        )

    def check_key(x_api_key: Optional[str] = Header(default=None)) -> None:
        if api_key is not None and x_api_key != api_key:
            raise HTTPException(status_code=401, detail="invalid or missing API key")

    def mutation_at(at: Optional[int]) -> Optional[int]:
        if at is None and simulation_mode:
            raise HTTPException(
                status_code=400,
                detail="simulation mode requires an explicit 'at' timestamp",
            )
        return at

    dep = [Depends(check_key)]

    # -- service ---------------------------------------------------------

    @app.get("/health")
    def health():
        return {"status": "ok", "houses": len(engine.houses),
                "events": engine.snapshot()["seq"]}

    @app.post("/tick", dependencies=dep)
    def tick(body: TickBody):
        return engine.run_scheduler_tick(at=mutation_at(body.at))

    # -- houses and residents ---------------------------------------------

    @app.get("/houses", dependencies=dep)
    def list_houses():
        return sorted(engine.houses)

    @app.post("/houses", dependencies=dep, status_code=201)
    def create_house(body: CreateHouseBody):
        config = HouseConfig.from_dict(body.config) if body.config else None
        engine.create_house(
            body.id, config=config, at=mutation_at(body.at),
            chores=[(c["name"], c.get("description", "")) for c in body.chores],
            buylist=body.buylist,
        )
        return {"id": body.id, "config": engine.houses[body.id].config.to_dict()}

    @app.get("/houses/{house}/config", dependencies=dep)
    def get_config(house: str):
        hs = engine.houses.get(house)
        if hs is None:
            raise UnknownHouse(house)
        return hs.config.to_dict()

    @app.get("/houses/{house}/residents", dependencies=dep)
    def list_residents(house: str):
        now = engine.now()
        return [
            {"id": record.id, "active": record.active_at(now),
             "tenures": [dataclasses.asdict(t) for t in record.tenures]}
            for record in engine.list_residents(house)
        ]

    @app.post("/houses/{house}/residents", dependencies=dep, status_code=201)
    def add_resident(house: str, body: ResidentBody):
        record = engine.add_resident(house, body.resident, at=mutation_at(body.at))
        return {"id": record.id, "tenures": [dataclasses.asdict(t) for t in record.tenures]}

    @app.delete("/houses/{house}/residents/{resident}", dependencies=dep)
    def remove_resident(house: str, resident: str, at: Optional[int] = Query(default=None)):
        record = engine.remove_resident(house, resident, at=mutation_at(at))
        return {"id": record.id, "tenures": [dataclasses.asdict(t) for t in record.tenures]}

    @app.get("/houses/{house}/events", dependencies=dep)
    def list_events(house: str, after: int = Query(default=-1)):
        if house not in engine.houses:
            raise UnknownHouse(house)
        return [
            {"seq": e.seq, "at": e.at, "kind": e.kind, "payload": e.payload}
            for e in engine.events if e.house == house and e.seq > after
        ]

    # -- chores -----------------------------------------------------------

    @app.get("/houses/{house}/chores", dependencies=dep)
    def chore_board(house: str, at: Optional[int] = Query(default=None)):
        return {"at": at if at is not None else engine.now(),
                "chores": engine.chore_board(house, at)}

    @app.post("/houses/{house}/chores/{chore}/claim", dependencies=dep, status_code=201)
    def claim_chore(house: str, chore: str, body: ClaimBody):
        claim = engine.claim_chore(house, chore, body.claimant, at=mutation_at(body.at))
        return dataclasses.asdict(claim)

    @app.post("/houses/{house}/chores/amendments", dependencies=dep, status_code=201)
    def chore_amendment(house: str, body: ChoreAmendmentBody):
        proposal = engine.propose_chore_amendment(
            house, body.action, body.proposer, at=mutation_at(body.at),
            name=body.name, description=body.description, chore=body.chore,
        )
        return _proposal_view(proposal, engine.now())

    @app.get("/houses/{house}/obligations/{month}", dependencies=dep)
    def obligations(house: str, month: str):
        return engine.get_obligations(house, month)

    @app.post("/houses/{house}/exemptions", dependencies=dep, status_code=201)
    def declare_exemption(house: str, body: ExemptionBody):
        return engine.declare_exemption(
            house, body.resident, body.month, body.from_day, body.to_day,
            at=mutation_at(body.at),
        )

    # -- proposals ----------------------------------------------------------

    @app.get("/houses/{house}/proposals", dependencies=dep)
    def list_proposals(house: str, open: bool = Query(default=False)):
        now = engine.now()
        return [_proposal_view(p, now) for p in engine.list_proposals(house, open_only=open)]

    @app.post("/houses/{house}/proposals/{proposal_id}/ballots",
              dependencies=dep, status_code=201)
    def cast_ballot(house: str, proposal_id: str, body: BallotBody):
        engine.cast_ballot(house, proposal_id, body.voter, body.direction,
                           at=mutation_at(body.at))
        proposal = engine.houses[house].proposals[proposal_id]
        return _proposal_view(proposal, engine.now())

    # -- prioritization -----------------------------------------------------

    @app.post("/houses/{house}/preferences", dependencies=dep, status_code=201)
    def submit_preference(house: str, body: PreferenceBody):
        record = engine.submit_preference(
            house, body.resident, body.preferred, body.deprioritized,
            at=mutation_at(body.at),
        )
        return dataclasses.asdict(record)

    @app.get("/houses/{house}/priorities", dependencies=dep)
    def priorities(house: str):
        return engine.priorities(house)

    # -- hearts ---------------------------------------------------------------

    @app.get("/houses/{house}/hearts", dependencies=dep)
    def hearts_board(house: str):
        return engine.hearts_board(house)

    @app.get("/houses/{house}/hearts/{resident}/history", dependencies=dep)
    def hearts_history(house: str, resident: str):
        return [dataclasses.asdict(e) for e in engine.hearts_history(house, resident)]

    @app.post("/houses/{house}/karma", dependencies=dep, status_code=201)
    def record_karma(house: str, body: KarmaBody):
        return engine.record_karma(house, body.giver, body.recipient,
                                   at=mutation_at(body.at), source=body.source)

    @app.post("/houses/{house}/challenges", dependencies=dep, status_code=201)
    def open_challenge(house: str, body: ChallengeBody):
        challenge = engine.open_challenge(
            house, body.challenger, body.challengee, at=mutation_at(body.at),
            stated_hearts=body.stated_hearts, reason=body.reason,
        )
        return dataclasses.asdict(challenge)

    @app.get("/houses/{house}/sanctions", dependencies=dep)
    def sanctions(house: str):
        hs = engine.houses.get(house)
        if hs is None:
            raise UnknownHouse(house)
        return [dataclasses.asdict(s) for s in hs.sanctions]

    @app.get("/houses/{house}/sanctions/{resident}", dependencies=dep)
    def sanction_check(house: str, resident: str):
        return {"resident": resident, "level": engine.sanction_check(house, resident)}

    # -- things -----------------------------------------------------------------

    @app.get("/houses/{house}/accounts", dependencies=dep)
    def accounts(house: str):
        return [dataclasses.asdict(a) for a in engine.list_accounts(house)]

    @app.get("/houses/{house}/accounts/ledger.csv", dependencies=dep,
             response_class=PlainTextResponse)
    def ledger_csv(house: str, account: Optional[str] = Query(default=None)):
        return things_math.ledger_csv(engine.ledger_entries(house, account))

    @app.post("/houses/{house}/purchases", dependencies=dep, status_code=201)
    def propose_purchase(house: str, body: PurchaseBody):
        purchase = engine.propose_purchase(
            house, body.proposer, body.item, body.price_cents, body.account,
            at=mutation_at(body.at),
        )
        hs = engine.houses[house]
        view = dataclasses.asdict(purchase)
        view["min_upvotes"] = hs.proposals[purchase.proposal_id].min_upvotes
        return view

    @app.get("/houses/{house}/purchases", dependencies=dep)
    def list_purchases(house: str, month: Optional[str] = Query(default=None)):
        return [dataclasses.asdict(p) for p in engine.list_purchases(house, month)]

    @app.get("/houses/{house}/purchases/threshold", dependencies=dep)
    def purchase_threshold(house: str, price_cents: int = Query(...),
                           item: Optional[str] = Query(default=None)):
        return {
            "price_cents": price_cents,
            "min_upvotes": engine.purchase_threshold(house, price_cents, item),
            "threshold_step_cents": engine.houses[house].config.threshold_step_cents,
        }

    @app.post("/houses/{house}/accounts/amendments", dependencies=dep, status_code=201)
    def account_amendment(house: str, body: AccountAmendmentBody):
        proposal = engine.propose_account_amendment(
            house, body.action, body.proposer, at=mutation_at(body.at),
            name=body.name, account=body.account,
            monthly_refill_cents=body.monthly_refill_cents,
        )
        return _proposal_view(proposal, engine.now())

    @app.get("/houses/{house}/buylist", dependencies=dep)
    def buylist(house: str):
        return [dataclasses.asdict(i) for i in engine.buylist_items(house)]

    @app.post("/houses/{house}/buylist/amendments", dependencies=dep, status_code=201)
    def buylist_amendment(house: str, body: BuylistAmendmentBody):
        proposal = engine.propose_buylist_amendment(
            house, body.action, body.proposer, at=mutation_at(body.at),
            name=body.name, vendor_hint=body.vendor_hint,
            typical_price_cents=body.typical_price_cents, item=body.item,
        )
        return _proposal_view(proposal, engine.now())

    return app


def serve(config: "ServiceConfig", store) -> None:
    """Build the engine from the store, mount the API, run until stopped."""
    import uvicorn

    engine = Engine(store=store)
    app = create_app(engine, api_key=config.api_key,
                     simulation_mode=config.simulation_mode,
                     tick_seconds=config.tick_seconds,
                     run_scheduler=True)
    uvicorn.run(app, host=config.bind, port=config.port, log_level="info")


@dataclasses.dataclass
class ServiceConfig:
    bind: str = "127.0.0.1"
    port: int = 8000
    store_path: str = "events.ndjson"
    api_key: Optional[str] = None
    simulation_mode: bool = False
    tick_seconds: float = 1.0
