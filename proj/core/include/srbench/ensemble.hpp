#pragma once

#include <span>
#include <vector>

#include "srbench/image.hpp"
#include "srbench/model.hpp"
#include "srbench/transform.hpp"

namespace srbench {

// Transform subsets selectable from the CLI: 8 = all of D4, 4 = the flip
// subgroup {rot0, rot180, rot0+flip, rot180+flip} (no axis swap), 1 =
// identity only.
std::vector<Transform> transform_subset(int count);

// Pixelwise mean of equally sized images, in real-valued space.
//
// Computed as first + sum(img_i - first) / n in list order, which makes the
// mean of identical inputs return the input bit for bit. Results are clamped
// to [0, 1].
Image mean_image(std::span<const Image> images);

struct EnsembleOptions {
  int jobs = 1;  // used only when the model is thread safe
};

// Mean over t in subset of invert(model(apply(img, t)), t). The subset is
// deduplicated and visited in Transform::index() order, so the result is
// independent of how the caller ordered it.
Image self_ensemble(const Image& img, const Model& model,
                    std::span<const Transform> subset,
                    const EnsembleOptions& options = {});

Image self_ensemble(const Image& img, const Model& model);

// Model ensemble: pixelwise mean of the outputs of several models.
Image fuse_outputs(std::span<const Image> images);

}  // namespace srbench
