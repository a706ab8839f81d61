"""Writes a tiny convolutional trunk as ONNX for the deep-extractor tests.

Input 1x3x32x32, output 1x8xhxw feature map. Weights are seeded so the
fixture is reproducible.
"""
import sys

import torch
from torch import nn


def main(path: str) -> None:
    torch.manual_seed(7)
    trunk = nn.Sequential(
        nn.Conv2d(3, 4, 3, padding=1),
        nn.ReLU(),
        nn.MaxPool2d(2),
        nn.Conv2d(4, 8, 3, padding=1),
        nn.ReLU(),
    ).eval()
    dummy = torch.zeros(1, 3, 32, 32)
    torch.onnx.export(trunk, dummy, path, input_names=["input"],
                      output_names=["features"], opset_version=11,
                      dynamo=False)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tiny_trunk.onnx")
