# The optimized engine against brute force on random pseudo-metrics.
import random

from vrbarcode import compute_barcodes
from vrbarcode.datasets import random_pseudometric
from vrbarcode.oracle import naive_reduce, pair_statistics, predicted_column_counts, rips_complex

agree = 0
for seed in range(30):
    rnd = random.Random(seed)
    n, max_dim, p = rnd.randint(4, 8), rnd.randint(1, 3), rnd.choice([2, 3, 5])
    m = random_pseudometric(n, seed, integer_levels=rnd.choice([None, 3]))
    fast = compute_barcodes(m, max_dim, modulus=p).barcode
    slow = naive_reduce(rips_complex(m.rows, max_dim), p)[2]
    agree += fast == slow
print(f"{agree}/30 barcodes agree")

# pair taxonomy of one brute-force reduction
m = random_pseudometric(8, 0)
c = rips_complex(m.rows, 2)
pairs, essential, _ = naive_reduce(c)
for d, counts in sorted(pair_statistics(c, pairs).items()):
    print(d, counts)

# how many columns each reduction strategy touches for 192 points up to dim 2
print(predicted_column_counts(192, 2))
