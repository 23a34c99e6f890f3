#!/usr/bin/env python3
# Copyright 2026 The speechveil Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Wire-protocol conformance suite.

Runs the shared test vectors against a model server and validates every
request and response against schemas/v1. Only the kinds the server lists on
its health route are exercised. With --binary it starts
`speechveil mock-serve` on a free port; with --url it targets an already
running server. --artifacts additionally produces a small mock run and
validates records.jsonl and report.json.

Exit status 77 means jsonschema is not installed.
"""

import argparse
import base64
import io
import json
import math
import pathlib
import struct
import subprocess
import sys
import tempfile
import urllib.error
import urllib.request
import wave

try:
    import jsonschema
    import referencing
except ImportError:
    print("SKIP jsonschema is not installed")
    sys.exit(77)


class Suite:
    def __init__(self, schemas_dir):
        resources = []
        self.schemas = {}
        for path in sorted(pathlib.Path(schemas_dir).glob("*.schema.json")):
            schema = json.loads(path.read_text(encoding="utf-8"))
            jsonschema.Draft202012Validator.check_schema(schema)
            name = path.name[: -len(".schema.json")]
            self.schemas[name] = schema
            resources.append((schema["$id"], referencing.Resource.from_contents(schema)))
        self.registry = referencing.Registry().with_resources(resources)
        self.failures = 0
        self.passes = 0

    def validate(self, name, instance):
        validator = jsonschema.Draft202012Validator(self.schemas[name], registry=self.registry)
        errors = sorted(validator.iter_errors(instance), key=lambda e: list(e.path))
        return "; ".join(f"{list(e.path)}: {e.message}" for e in errors[:3])

    def check(self, label, ok, detail=""):
        if ok:
            self.passes += 1
            print(f"PASS {label}")
        else:
            self.failures += 1
            print(f"FAIL {label}: {detail}")


def http(base, method, route, body=None, raw=None):
    data = raw if raw is not None else (None if body is None else json.dumps(body).encode())
    request = urllib.request.Request(base + route, data=data, method=method)
    request.add_header("Content-Type", "application/json")
    try:
        with urllib.request.urlopen(request, timeout=30) as response:
            return response.status, json.loads(response.read())
    except urllib.error.HTTPError as error:
        payload = error.read()
        try:
            return error.code, json.loads(payload)
        except ValueError:
            return error.code, payload.decode(errors="replace")


def call(suite, base, kind, route, body):
    problem = suite.validate(f"{kind}.request", body)
    suite.check(f"{kind} request vector matches schema", not problem, problem)
    status, response = http(base, "POST", route, body)
    problem = suite.validate(f"{kind}.response", response) if status == 200 else str(response)
    suite.check(f"{kind} responds 200 with a valid body", status == 200 and not problem,
                f"status {status}: {problem}")
    return response if status == 200 else None


ROUTES = {"asr": "/v1/asr", "ner": "/v1/ner", "llm": "/v1/complete", "tts": "/v1/tts",
          "embed": "/v1/embed", "mos": "/v1/mos"}


def sine_wav(seconds=0.5, rate=16000):
    buffer = io.BytesIO()
    with wave.open(buffer, "wb") as out:
        out.setnchannels(1)
        out.setsampwidth(2)
        out.setframerate(rate)
        frames = (int(8000 * math.sin(2 * math.pi * 220 * i / rate)) for i in range(int(seconds * rate)))
        out.writeframes(b"".join(struct.pack("<h", f) for f in frames))
    return buffer.getvalue()


def run_protocol(suite, base, prompt):
    status, health = http(base, "GET", "/v1/health")
    problem = suite.validate("health.response", health) if status == 200 else str(health)
    suite.check("health route", status == 200 and not problem, f"status {status}: {problem}")
    if status != 200:
        return
    kinds = set(health["kinds"])

    if "ner" in kinds:
        text = "i met anna in paris on monday"
        ner = call(suite, base, "ner", ROUTES["ner"], {"text": text})
        if ner:
            ok = all(e.get("surface", text[e["start"]:e["end"]]) == text[e["start"]:e["end"]]
                     for e in ner["entities"])
            suite.check("ner offsets are code points into the text", ok, json.dumps(ner))

    if "llm" in kinds:
        completion = call(suite, base, "llm", ROUTES["llm"], {"prompt": prompt})
        if completion:
            suite.check("llm completion is fenced", completion["completion"].count("####") >= 2,
                        completion["completion"])

    wav_b64 = base64.b64encode(sine_wav()).decode()
    if "tts" in kinds:
        tts = call(suite, base, "tts", ROUTES["tts"], {
            "text": "hello there from the chamber",
            "description": "a female speaker reads a book slowly with low-pitched and monotone voice.",
            "attributes": {"gender": "female", "pitch": "low-pitched",
                           "pitch_modulation": "monotone", "speaking_rate": "slowly",
                           "channel": "clean", "accent": None}})
        if tts and "b64" in tts["audio"]:
            wav = base64.b64decode(tts["audio"]["b64"])
            suite.check("tts audio is a RIFF/WAVE file",
                        wav[:4] == b"RIFF" and wav[8:12] == b"WAVE")
            wav_b64 = tts["audio"]["b64"]

    audio = {"audio": {"b64": wav_b64, "format": "wav"}}
    if "asr" in kinds:
        call(suite, base, "asr", ROUTES["asr"], audio)
    if "embed" in kinds:
        embed = call(suite, base, "embed", ROUTES["embed"], audio)
        if embed:
            suite.check("embedding is non-zero", any(v != 0 for v in embed["embedding"]))
    if "mos" in kinds:
        call(suite, base, "mos", ROUTES["mos"], audio)

    error_vectors = [("unknown route", "POST", "/v1/nope", {}, None, 404)]
    first = ROUTES[sorted(kinds)[0]]
    error_vectors += [("GET on a POST route", "GET", first, None, None, 405),
                      ("body that is not JSON", "POST", first, None, b"garbage", 400)]
    if "asr" in kinds:
        error_vectors.append(("missing audio", "POST", ROUTES["asr"], {}, None, 400))
    if "embed" in kinds:
        error_vectors.append(
            ("audio without path or b64", "POST", ROUTES["embed"], {"audio": {}}, None, 400))
    if "ner" in kinds:
        error_vectors.append(("non-string text", "POST", ROUTES["ner"], {"text": 5}, None, 400))
    if "llm" in kinds:
        error_vectors.append(("missing prompt", "POST", ROUTES["llm"], {}, None, 400))
    for label, method, route, body, raw, expected in error_vectors:
        status, response = http(base, method, route, body, raw)
        problem = suite.validate("error", response)
        suite.check(f"{label} -> {expected} error envelope", status == expected and not problem,
                    f"status {status}: {problem or response}")


def run_artifacts(suite, binary, manifest, workdir):
    config = {"manifest": str(manifest), "seed": 5, "limit": 24, "parallelism": 2,
              "mock_world": {"sample_rate": 8000, "tts_seconds_per_char": 0.005}}
    config_path = workdir / "config.json"
    config_path.write_text(json.dumps(config))
    run = workdir / "run"
    for args in (["anonymize", "--config", str(config_path), "--out", str(run)],
                 ["evaluate", "--out", str(run)]):
        result = subprocess.run([binary, *args], capture_output=True, text=True)
        suite.check(f"speechveil {args[0]} exits 0", result.returncode == 0, result.stderr)
        if result.returncode != 0:
            return
    lines = (run / "records.jsonl").read_text(encoding="utf-8").splitlines()
    problems = [p for p in (suite.validate("record", json.loads(line)) for line in lines) if p]
    suite.check(f"{len(lines)} records match the record schema", lines and not problems,
                "; ".join(problems[:2]))
    report = json.loads((run / "report.json").read_text(encoding="utf-8"))
    problem = suite.validate("report", report)
    suite.check("report.json matches the report schema", not problem, problem)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--schemas", required=True)
    parser.add_argument("--prompt", required=True, help="A rendered replacement prompt")
    parser.add_argument("--binary", help="speechveil executable; starts mock-serve")
    parser.add_argument("--url", help="Base URL of a running server")
    parser.add_argument("--manifest", help="Manifest for mock-serve and --artifacts")
    parser.add_argument("--artifacts", action="store_true")
    args = parser.parse_args()
    if not args.binary and not args.url:
        parser.error("pass --binary or --url")

    suite = Suite(args.schemas)
    prompt = pathlib.Path(args.prompt).read_text(encoding="utf-8")
    server = None
    try:
        base = args.url
        if base is None:
            command = [args.binary, "mock-serve", "--port", "0"]
            if args.manifest:
                command += ["--manifest", args.manifest]
            server = subprocess.Popen(command, stdout=subprocess.PIPE, text=True)
            base = json.loads(server.stdout.readline())["listening"]
        run_protocol(suite, base.rstrip("/"), prompt)
        if args.artifacts and args.binary and args.manifest:
            with tempfile.TemporaryDirectory() as tmp:
                run_artifacts(suite, args.binary, pathlib.Path(args.manifest).resolve(),
                              pathlib.Path(tmp))
    finally:
        if server is not None:
            server.terminate()
            server.wait(timeout=10)
    print(f"{suite.passes} passed, {suite.failures} failed")
    return 1 if suite.failures else 0


if __name__ == "__main__":
    sys.exit(main())
