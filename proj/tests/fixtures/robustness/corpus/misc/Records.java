package corpus.misc;

import java.util.List;

public record Records<T>(String name, List<T> items, int... counts) implements Comparable<Records<T>> {
    static int created;

    public Records {
        created++;
    }

    public Records(String name) {
        this(name, List.of());
    }

    public int compareTo(Records<T> other) { return name.compareTo(other.name); }
}
