import logging

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from teichranders.api.routes import cometric, distance, ray, verify
from teichranders.config import CONFIG

logger = logging.getLogger(__name__)

app = FastAPI(
    title="Teichmüller–Randers API",
    description="Weak Finsler metrics on Teichmüller space: distances, rays, cometrics",
    version="1.0.0",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(distance.router)
app.include_router(ray.router)
app.include_router(cometric.router)
app.include_router(verify.router)


@app.get("/")
async def root():
    return {
        "message": "Teichmüller–Randers API",
        "schema": CONFIG.schema.VERSION,
    }
