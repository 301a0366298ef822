"""
Repairing a shortcut on SpurShapes, one step at a time
======================================================

Squares sit on land and circles on water in 95% of the training images.
A plain classifier learns the background instead of the shape.  We then
swap the shape inside low-loss majority images, keep only the swaps the
classifier actually notices, and fine-tune on the result.

Runs in a couple of minutes on a laptop CPU.
"""

import numpy as np

from spurforge import backends, classifier, data, generation, retraining, selection

# A seeded biased dataset.  val and test are group balanced.
train, val, test = data.make_spurshapes(data.SpurShapesConfig(p_corr=0.95, per_class_count=1000, seed=0))
print(train)
for key, n in sorted(train.group_counts.items()):
    print(f"  {train.class_names[key.label]:>6} on {train.attribute_names[key.attribute]:<5} {n}")

# Plain ERM.  Forty epochs is short enough that the background wins.
erm = classifier.train_erm(train, classifier.TrainConfig(
    learning_rate=0.05, momentum=0.9, batch_size=64, epochs=40, seed=0, arch="deep_cnn"))
before = classifier.evaluate_groups(erm, test)
print(f"ERM worst-group {before.worst_group_accuracy:.3f}  average {before.average_accuracy:.3f}")

# Oracle backends stand in for segmentation, inversion and inpainting.
seg = backends.OracleSegmenter.from_manifests(train, val, test)
inverter = backends.OracleInverter(seg)
inpainter = backends.OracleInpainter()
minority = selection.minority_groups(train)
sel = selection.SelectionConfig(inversion_set_size=5)

kept = {}
for src, tgt in ((0, 1), (1, 0)):
    # the source class's confident majority images are the ones to edit
    k = selection.imbalance_gap(train, src, tgt)
    low = selection.lowest_loss_subset(erm, train, src, k)
    psi = selection.mean_softmax(erm, train, src).psi_mean
    token = inverter.invert_token(selection.inversion_dataset(val, erm, tgt, sel, minority), train.class_names[tgt])
    res = generation.generate_new_dataset(erm, src, tgt, psi, 0.0, seg, token, inpainter, low,
                                          train.class_names, steps=32)
    print(f"{src}->{tgt}: Psi={psi:.3f}", res.summary)
    kept[src, tgt] = res.manifest

# Swaps relabelled as class 0 are upweighted by gamma1, the rest by gamma2.
generated = {"gen1": kept[1, 0], "gen2": kept[0, 1]}
cfg = retraining.RetrainConfig(gamma1=1.0, gamma2=1.0, train=classifier.TrainConfig(
    learning_rate=0.01, momentum=0.9, batch_size=64, epochs=10, seed=1, arch="deep_cnn"))
out = retraining.retrain(erm, train, generated, cfg, val=val)
after = classifier.evaluate_groups(out.model, test)
print(f"retrained (epoch {out.best_epoch}) worst-group {after.worst_group_accuracy:.3f}  "
      f"average {after.average_accuracy:.3f}")

for key in sorted(after.per_group_accuracy):
    name = f"{train.class_names[key.label]}/{train.attribute_names[key.attribute]}"
    print(f"  {name:<13} {before.per_group_accuracy[key]:.3f} -> {after.per_group_accuracy[key]:.3f}")
print("gain in worst-group points:", np.round(100 * (after.worst_group_accuracy - before.worst_group_accuracy), 1))
