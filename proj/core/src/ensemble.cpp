#include "srbench/ensemble.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "srbench/error.hpp"
#include "srbench/parallel.hpp"

namespace srbench {

std::vector<Transform> transform_subset(int count) {
  switch (count) {
    case 8: {
      const auto all = all_transforms();
      return {all.begin(), all.end()};
    }
    case 4:
      return {{0, false}, {2, false}, {0, true}, {2, true}};
    case 1:
      return {Transform::identity()};
    default:
      throw Error(ErrorKind::kInvalidArgument,
                  "transform count must be 8, 4 or 1, got " +
                      std::to_string(count));
  }
}

Image mean_image(std::span<const Image> images) {
  if (images.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "cannot average an empty list");
  }
  const Image& first = images.front();
  for (std::size_t i = 1; i < images.size(); ++i) {
    require_same_dims(first, images[i], "mean of images #0 and #" + std::to_string(i));
  }
  if (images.size() == 1) return first;

  const double n = static_cast<double>(images.size());
  Image out = first;
  auto dst = out.data();
  const auto base = first.data();
  for (std::size_t s = 0; s < dst.size(); ++s) {
    double offset = 0.0;
    for (std::size_t i = 1; i < images.size(); ++i) {
      offset += images[i].data()[s] - base[s];
    }
    dst[s] = std::clamp(base[s] + offset / n, 0.0, 1.0);
  }
  return out;
}

Image self_ensemble(const Image& img, const Model& model,
                    std::span<const Transform> subset,
                    const EnsembleOptions& options) {
  if (subset.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "self-ensemble subset is empty");
  }
  std::array<bool, kGroupOrder> chosen{};
  for (const Transform& t : subset) chosen[t.index()] = true;
  std::vector<Transform> order;
  for (int i = 0; i < kGroupOrder; ++i) {
    if (chosen[i]) order.push_back(Transform::from_index(i));
  }

  std::vector<Image> outputs(order.size());
  parallel_for(order.size(), model.thread_safe ? options.jobs : 1,
               [&](std::size_t i) {
                 const Transform& t = order[i];
                 const Image input = apply_transform(img, t);
                 const Image output = model(input);
                 check_model_output(input, output, model.scale,
                                    "self-ensemble branch " + t.name());
                 outputs[i] = invert_transform(output, t);
               });
  return mean_image(outputs);
}

Image self_ensemble(const Image& img, const Model& model) {
  const auto all = all_transforms();
  return self_ensemble(img, model, all);
}

Image fuse_outputs(std::span<const Image> images) {
  return mean_image(images);
}

}  // namespace srbench
