"""
Runner script for the azbrane HTTP API.
Usage: python run.py
"""
import uvicorn

from azbrane.config import API_HOST, API_PORT, API_RELOAD

if __name__ == "__main__":
    uvicorn.run(
        "azbrane.main:app",
        host=API_HOST,
        port=API_PORT,
        reload=API_RELOAD,
    )
