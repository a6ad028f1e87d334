"""
File Upload Utility - Read scenario documents from uploaded files.

Supported formats:
- INI-style scenario configs (.ini, .cfg)
- Plain Text (.txt)

Max file size: 1MB
"""

from typing import Tuple

from fastapi import HTTPException, UploadFile


MAX_FILE_SIZE_MB = 1
MAX_FILE_SIZE_BYTES = MAX_FILE_SIZE_MB * 1024 * 1024
ALLOWED_EXTENSIONS = {'.ini', '.cfg', '.txt'}


def get_file_extension(filename: str) -> str:
    """Get lowercase file extension."""
    if '.' not in filename:
        return ''
    return '.' + filename.rsplit('.', 1)[1].lower()


async def read_config_upload(file: UploadFile) -> Tuple[str, str]:
    """
    Read an uploaded scenario document.

    Returns:
        Tuple of (document_text, filename)

    Raises:
        HTTPException on validation/decoding errors
    """
    if not file.filename:
        raise HTTPException(status_code=400, detail="No filename provided")

    ext = get_file_extension(file.filename)
    if ext not in ALLOWED_EXTENSIONS:
        raise HTTPException(
            status_code=400,
            detail=f"Unsupported file type '{ext}'. Allowed: {', '.join(sorted(ALLOWED_EXTENSIONS))}"
        )

    content = await file.read()
    if len(content) > MAX_FILE_SIZE_BYTES:
        raise HTTPException(
            status_code=413,
            detail=f"File too large. Maximum size: {MAX_FILE_SIZE_MB}MB"
        )

    text = decode_text(content)
    if not text.strip():
        raise HTTPException(status_code=400, detail="Config file is empty")
    return text, file.filename


def decode_text(content: bytes) -> str:
    """UTF-8 first (a BOM is dropped), then Windows-1252."""
    for encoding in ['utf-8-sig', 'cp1252']:
        try:
            return content.decode(encoding)
        except UnicodeDecodeError:
            continue
    raise HTTPException(status_code=400, detail="Could not decode config file")
