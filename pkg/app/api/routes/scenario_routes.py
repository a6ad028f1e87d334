"""
Scenario Routes

GET  /presets             - Preset names with their config documents
POST /scenarios/validate  - Validate an uploaded config
POST /scenarios/run       - Run an uploaded config, return its manifest
"""

import logging
import tempfile
from typing import List, Optional

from fastapi import APIRouter, File, Form, HTTPException, UploadFile
from fastapi.concurrency import run_in_threadpool

from app.core.config import get_settings
from app.core.exceptions import ConfigError, GFShockError
from app.schemas.schemas import PresetInfo, RunResponse, ValidationResponse
from app.services.scenario_service import PRESETS, parse_config, run_scenario
from app.utils.file_upload import read_config_upload

logger = logging.getLogger(__name__)

router = APIRouter(tags=["Scenarios"])


def _config_error(e: ConfigError) -> HTTPException:
    return HTTPException(status_code=422, detail={"source": e.source, "violations": e.violations})


@router.get("/presets", response_model=List[PresetInfo])
async def list_presets():
    """Every preset with the document it expands to."""
    return [PresetInfo(name=name, description=p.description, config_text=p.text) for name, p in PRESETS.items()]


@router.post("/scenarios/validate", response_model=ValidationResponse)
async def validate_scenario(file: UploadFile = File(...)):
    """Validate a config upload. 422 lists every violation."""
    text, filename = await read_config_upload(file)
    try:
        config = parse_config(text, source=filename)
    except ConfigError as e:
        raise _config_error(e)
    return ValidationResponse(valid=True, config=config)


@router.post("/scenarios/run", response_model=RunResponse)
async def run_uploaded_scenario(file: UploadFile = File(...), out: Optional[str] = Form(None)):
    """
    Run a config upload to completion.

    Files go to GFSHOCK_OUT, else `out`, else a fresh temporary directory.
    A solver abort answers 409 with the diagnostic.
    """
    text, filename = await read_config_upload(file)
    try:
        config = parse_config(text, source=filename)
    except ConfigError as e:
        raise _config_error(e)

    settings = get_settings()
    requested = out or config.output.directory
    if settings.out is None and requested is None:
        requested = tempfile.mkdtemp(prefix="gfshock_")
    directory = settings.output_dir(requested)
    try:
        manifest = await run_in_threadpool(run_scenario, config, directory)
    except GFShockError as e:
        logger.error("run of %s aborted: %s", filename, e)
        raise HTTPException(status_code=409, detail=str(e))
    return RunResponse(output_dir=directory, manifest=manifest)
