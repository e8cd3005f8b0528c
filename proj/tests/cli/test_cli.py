import os
import random
import subprocess

import pytest

CLI = os.environ.get("STEGIM_CLI")

pytestmark = pytest.mark.skipif(not CLI, reason="STEGIM_CLI not set")


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def first_line(result):
    return result.stdout.splitlines()[0] if result.stdout else ""


def write_pgm(path, w, h, pixels):
    assert len(pixels) == w * h
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n255\n" % (w, h))
        f.write(pixels)


def gray_cover(path, w=16, h=16, seed=1):
    write_pgm(path, w, h, random.Random(seed).randbytes(w * h))


def test_metrics_identical(tmp_path):
    a = str(tmp_path / "a.pgm")
    gray_cover(a)
    r = run("metrics", "--a", a, "--b", a)
    assert r.returncode == 0
    assert first_line(r) == "status=OK"
    assert "psnr_db=IDENTICAL" in r.stdout
    assert "ssim=1" in r.stdout


def test_lsb_embed_extract(tmp_path):
    cover = str(tmp_path / "cover.pgm")
    stego = str(tmp_path / "stego.pgm")
    payload = str(tmp_path / "payload.bin")
    out = str(tmp_path / "out.bin")
    gray_cover(cover)
    data = b"hello stego"
    with open(payload, "wb") as f:
        f.write(data)

    r = run("embed", "--scheme", "lsb", "--in", cover, "--out", stego,
            "--payload", payload, "--order", "perm", "--key", "beef")
    assert r.returncode == 0
    assert first_line(r) == "status=OK"
    assert "capacity_bits=256" in r.stdout
    assert os.path.exists(stego)

    r = run("extract", "--scheme", "lsb", "--in", stego, "--out", out,
            "--order", "perm", "--key", "beef")
    assert r.returncode == 0
    assert first_line(r) == "status=OK"
    with open(out, "rb") as f:
        assert f.read() == data


def test_lsb_capacity_error(tmp_path):
    cover = str(tmp_path / "cover.pgm")
    stego = str(tmp_path / "stego.pgm")
    payload = str(tmp_path / "payload.bin")
    gray_cover(cover)
    with open(payload, "wb") as f:
        f.write(b"x" * 40)  # needs 416 bits, cover holds 256

    r = run("embed", "--scheme", "lsb", "--in", cover, "--out", stego,
            "--payload", payload)
    assert r.returncode == 3
    assert first_line(r) == "status=ERROR"


def test_lsb_wrong_key(tmp_path):
    cover = str(tmp_path / "cover.pgm")
    stego = str(tmp_path / "stego.pgm")
    payload = str(tmp_path / "payload.bin")
    out = str(tmp_path / "out.bin")
    gray_cover(cover)
    with open(payload, "wb") as f:
        f.write(b"secret")
    r = run("embed", "--scheme", "lsb", "--in", cover, "--out", stego,
            "--payload", payload, "--order", "perm", "--key", "1234")
    assert r.returncode == 0

    r = run("extract", "--scheme", "lsb", "--in", stego, "--out", out,
            "--order", "perm", "--key", "4321")
    assert r.returncode == 4
    assert first_line(r) == "status=ERROR"


def test_pvd_roundtrip(tmp_path):
    cover = str(tmp_path / "cover.pgm")
    stego = str(tmp_path / "stego.pgm")
    payload = str(tmp_path / "payload.bin")
    out = str(tmp_path / "out.bin")
    gray_cover(cover, 48, 32, seed=2)
    data = b"difference"
    with open(payload, "wb") as f:
        f.write(data)

    r = run("embed", "--scheme", "pvd", "--in", cover, "--out", stego,
            "--payload", payload, "--key", "7")
    assert r.returncode == 0
    r = run("extract", "--scheme", "pvd", "--in", stego, "--out", out, "--key", "7")
    assert r.returncode == 0
    with open(out, "rb") as f:
        assert f.read() == data


def test_hsrdh_restores_cover(tmp_path):
    cover = str(tmp_path / "cover.pgm")
    stego = str(tmp_path / "stego.pgm")
    payload = str(tmp_path / "payload.bin")
    out = str(tmp_path / "out.bin")
    sidecar = str(tmp_path / "rec.hsrdh")
    restored = str(tmp_path / "restored.pgm")

    rng = random.Random(3)
    pixels = bytearray(rng.randbytes(64 * 48))
    for i in range(len(pixels)):
        roll = rng.random()
        if roll < 0.3:
            pixels[i] = 100
        elif roll < 0.5:
            pixels[i] = 150
    write_pgm(cover, 64, 48, bytes(pixels))
    data = b"reversible"
    with open(payload, "wb") as f:
        f.write(data)

    r = run("embed", "--scheme", "hsrdh", "--in", cover, "--out", stego,
            "--payload", payload, "--rounds", "2", "--sidecar", sidecar)
    assert r.returncode == 0
    assert os.path.exists(sidecar)

    r = run("extract", "--scheme", "hsrdh", "--in", stego, "--out", out,
            "--sidecar", sidecar, "--restored", restored)
    assert r.returncode == 0
    with open(out, "rb") as f:
        assert f.read() == data
    with open(cover, "rb") as f1, open(restored, "rb") as f2:
        assert f1.read() == f2.read()


def test_svdwm_verify_and_localize(tmp_path):
    cover = str(tmp_path / "cover.pgm")
    stego = str(tmp_path / "stego.pgm")
    attacked = str(tmp_path / "attacked.pgm")
    mapimg = str(tmp_path / "map.pgm")
    gray_cover(cover, 32, 32, seed=4)

    r = run("embed", "--scheme", "svdwm", "--in", cover, "--out", stego,
            "--key1", "aa", "--key2", "bb")
    assert r.returncode == 0

    r = run("verify", "--scheme", "svdwm", "--in", stego,
            "--key1", "aa", "--key2", "bb", "--map", mapimg)
    assert r.returncode == 0
    assert first_line(r) == "status=OK"
    assert "block 0 0 ok" in r.stdout

    r = run("attack", "--in", stego, "--out", attacked, "--kind", "fill",
            "--region", "8,8,8,8", "--value", "200")
    assert r.returncode == 0
    assert first_line(r) == "status=OK"

    r = run("verify", "--scheme", "svdwm", "--in", attacked,
            "--key1", "aa", "--key2", "bb", "--map", mapimg)
    assert r.returncode == 1
    assert first_line(r) == "status=TAMPERED"
    assert "block 1 1 tampered" in r.stdout
    assert "block 0 0 ok" in r.stdout
    assert os.path.exists(mapimg)


def test_selfhash_verdicts(tmp_path):
    cover = str(tmp_path / "cover.pgm")
    tagged = str(tmp_path / "tagged.pgm")
    flipped = str(tmp_path / "flipped.pgm")
    gray_cover(cover, 24, 24, seed=5)

    r = run("verify", "--scheme", "selfhash", "--in", cover, "--key", "9")
    assert r.returncode == 4
    assert first_line(r) == "status=ERROR"
    assert "verdict=NO_TAG" in r.stdout

    r = run("embed", "--scheme", "selfhash", "--in", cover, "--out", tagged,
            "--key", "9")
    assert r.returncode == 0

    r = run("verify", "--scheme", "selfhash", "--in", tagged, "--key", "9")
    assert r.returncode == 0
    assert "verdict=AUTHENTIC" in r.stdout

    r = run("attack", "--in", tagged, "--out", flipped, "--kind", "bit-flips",
            "--count", "1", "--seed", "6")
    assert r.returncode == 0

    r = run("verify", "--scheme", "selfhash", "--in", flipped, "--key", "9")
    assert r.returncode == 1
    assert first_line(r) == "status=TAMPERED"


def test_capacity(tmp_path):
    cover = str(tmp_path / "cover.pgm")
    gray_cover(cover)
    r = run("capacity", "--scheme", "lsb", "--in", cover)
    assert r.returncode == 0
    assert first_line(r) == "status=OK"
    assert "capacity_bits=256" in r.stdout


def test_attack_truth_map(tmp_path):
    cover = str(tmp_path / "cover.pgm")
    noisy = str(tmp_path / "noisy.pgm")
    truth = str(tmp_path / "truth.pgm")
    gray_cover(cover, 32, 32, seed=8)
    r = run("attack", "--in", cover, "--out", noisy, "--kind", "salt-pepper",
            "--density", "0.05", "--seed", "c0de", "--truth", truth)
    assert r.returncode == 0
    assert first_line(r) == "status=OK"
    changed = [l for l in r.stdout.splitlines() if l.startswith("changed_pixels=")]
    assert changed and int(changed[0].split("=")[1]) > 0
    assert os.path.exists(truth)


def test_usage_errors(tmp_path):
    cover = str(tmp_path / "cover.pgm")
    gray_cover(cover)

    r = run("embed", "--scheme", "nonsense", "--in", cover,
            "--out", str(tmp_path / "x.pgm"))
    assert r.returncode == 2
    assert first_line(r) == "status=ERROR"

    r = run("embed", "--scheme", "lsb", "--in", cover)  # missing --out
    assert r.returncode == 2
    assert first_line(r) == "status=ERROR"

    r = run("metrics", "--a", cover, "--b", str(tmp_path / "missing.pgm"))
    assert r.returncode == 4
    assert first_line(r) == "status=ERROR"
