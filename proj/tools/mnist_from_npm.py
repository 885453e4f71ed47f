#!/usr/bin/env python3
"""Convert the digit JSON files shipped in the npm `mnist` package to IDX.

The package stores 28x28 MNIST digits as pixel/255 rounded to three decimals.
Because 1/255 > 0.001 the original bytes are recovered exactly by rounding.

    npm pack mnist && tar xzf mnist-*.tgz
    python3 tools/mnist_from_npm.py package/src/digits data/mnist
"""
import argparse
import gzip
import json
import pathlib
import struct


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("digits_dir", type=pathlib.Path)
    parser.add_argument("out_dir", type=pathlib.Path)
    args = parser.parse_args()

    images = bytearray()
    labels = bytearray()
    per_digit = []
    for digit in range(10):
        with open(args.digits_dir / f"{digit}.json") as fh:
            data = json.load(fh)["data"]
        if len(data) % 784:
            raise SystemExit(f"{digit}.json: length {len(data)} not a multiple of 784")
        count = len(data) // 784
        for v in data:
            b = round(v * 255)
            if abs(b / 255 - v) > 0.0006 or not 0 <= b <= 255:
                raise SystemExit(f"{digit}.json: value {v} is not a rounded byte")
            images.append(b)
        labels.extend([digit] * count)
        per_digit.append(count)

    n = len(labels)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    with gzip.GzipFile(args.out_dir / "images-idx3-ubyte.gz", "wb", mtime=0) as fh:
        fh.write(struct.pack(">IIII", 2051, n, 28, 28))
        fh.write(images)
    with gzip.GzipFile(args.out_dir / "labels-idx1-ubyte.gz", "wb", mtime=0) as fh:
        fh.write(struct.pack(">II", 2049, n))
        fh.write(labels)
    print(f"wrote {n} images; per digit: {per_digit}")


if __name__ == "__main__":
    main()
