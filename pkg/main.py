"""
FastAPI report service for the finite commutative ring laboratory
"""

import os
import logging
from contextlib import asynccontextmanager
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from dotenv import load_dotenv

from src.core.config import get_settings
from src.core.exceptions import ParseError, RingLabError
from src.models.schemas import (
    CatalogReport,
    ClassificationReport,
    ClassifyRequest,
    IdealsReport,
    RingInfo,
    RingRequest,
    SearchReport,
    SearchRequest,
    VerifyRequest,
)
from src.services.lab_service import RingLabService
from src.utils.logging_utils import setup_logging

# Load environment variables
load_dotenv()

settings = get_settings()
setup_logging(settings.log_level, settings.log_file)
logger = logging.getLogger(__name__)

lab_service: Optional[RingLabService] = None

VERSION = "1.0.0"


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Create the lab service on startup"""
    global lab_service

    logger.info("Starting ring laboratory service...")
    lab_service = RingLabService(settings)
    yield
    logger.info("Shutting down ring laboratory service...")


app = FastAPI(
    title="Finite Ring Laboratory",
    description="Ideal classification, theorem verification and separator search over finite commutative rings",
    version=VERSION,
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


def get_service() -> RingLabService:
    global lab_service
    if lab_service is None:
        lab_service = RingLabService(settings)
    return lab_service


def _bad_request(error: RingLabError) -> HTTPException:
    detail = {"error": error.__class__.__name__, "message": str(error)}
    if isinstance(error, ParseError):
        detail.update(offset=error.offset, expected=error.expected, found=error.found)
    return HTTPException(status_code=400, detail=detail)


@app.get("/")
async def root():
    """Root endpoint"""
    return {
        "message": "Finite Ring Laboratory",
        "status": "healthy",
        "version": VERSION,
        "environment": settings.environment,
    }


@app.get("/health")
async def health_check():
    """Health check"""
    return {
        "status": "healthy",
        "version": VERSION,
        "size_cap": settings.size_cap,
        "services": {"lab_service": lab_service is not None},
    }


@app.post("/rings/info", response_model=RingInfo)
def ring_info(request: RingRequest) -> RingInfo:
    try:
        return get_service().info(request.ring)
    except RingLabError as e:
        raise _bad_request(e)


@app.post("/rings/ideals", response_model=IdealsReport)
def ring_ideals(request: RingRequest) -> IdealsReport:
    try:
        return get_service().ideals(request.ring)
    except RingLabError as e:
        raise _bad_request(e)


@app.post("/classify", response_model=ClassificationReport)
def classify(request: ClassifyRequest) -> ClassificationReport:
    """Classify the ideal generated by `request.ideal` in `request.ring`"""
    try:
        return get_service().classify(request.ring, request.ideal)
    except RingLabError as e:
        raise _bad_request(e)


@app.post("/verify", response_model=CatalogReport)
def verify(request: VerifyRequest) -> CatalogReport:
    """Run the theorem suite on one ring, a posted catalog, or the configured catalog"""
    try:
        logger.info(f"Verifying {request.ring or 'catalog'}")
        return get_service().verify(request.ring, request.catalog)
    except RingLabError as e:
        raise _bad_request(e)


@app.post("/search", response_model=SearchReport)
def search(request: SearchRequest) -> SearchReport:
    try:
        return get_service().search(request.catalog)
    except RingLabError as e:
        raise _bad_request(e)


if __name__ == "__main__":
    import uvicorn
    port = int(os.getenv("PORT", settings.port))
    uvicorn.run(
        "main:app",
        host="0.0.0.0",
        port=port,
        reload=False,
    )
