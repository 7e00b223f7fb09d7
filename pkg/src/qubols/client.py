"""Thin HTTP client for the qubols service.

By default requests are routed through an in-process ASGI transport, so
CLI commands work without a running server; pass a base URL to target a
remote service instead.
"""

from __future__ import annotations

from typing import Optional

import httpx

from .schemas import (
    BuildRequest,
    BuildResponse,
    DecodeRequest,
    DecodeResponse,
    EstimateResponse,
    ProblemDocument,
    SolveRequest,
    SolveResponse,
    VerifyResponse,
)


class ServiceError(Exception):
    """Non-2xx response from the service."""

    def __init__(self, status_code: int, detail: str):
        super().__init__(f"service returned {status_code}: {detail}")
        self.status_code = status_code
        self.detail = detail


class ServiceClient:
    def __init__(self, server: Optional[str] = None, timeout: float = 600.0):
        self._server = server
        self._timeout = timeout

    def _client(self) -> httpx.AsyncClient:
        if self._server:
            return httpx.AsyncClient(base_url=self._server, timeout=self._timeout)
        from .service import create_app

        return httpx.AsyncClient(
            transport=httpx.ASGITransport(app=create_app()),
            base_url="http://qubols.internal",
            timeout=self._timeout,
        )

    async def _request(self, method: str, path: str, **kwargs) -> dict:
        async with self._client() as client:
            response = await client.request(method, path, **kwargs)
        if response.status_code >= 400:
            try:
                detail = response.json().get("detail", response.text)
            except ValueError:
                detail = response.text
            raise ServiceError(response.status_code, str(detail))
        return response.json()

    async def build(self, req: BuildRequest) -> BuildResponse:
        payload = await self._request("POST", "/build", json=req.model_dump(mode="json"))
        return BuildResponse.model_validate(payload)

    async def solve(self, req: SolveRequest) -> SolveResponse:
        payload = await self._request("POST", "/solve", json=req.model_dump(mode="json"))
        return SolveResponse.model_validate(payload)

    async def decode(self, req: DecodeRequest) -> DecodeResponse:
        payload = await self._request("POST", "/decode", json=req.model_dump(mode="json"))
        return DecodeResponse.model_validate(payload)

    async def estimate(self, n: int, m: int) -> EstimateResponse:
        payload = await self._request("GET", "/estimate", params={"n": n, "m": m})
        return EstimateResponse.model_validate(payload)

    async def verify(self, problem: ProblemDocument) -> VerifyResponse:
        payload = await self._request("POST", "/verify", json=problem.model_dump(mode="json"))
        return VerifyResponse.model_validate(payload)
