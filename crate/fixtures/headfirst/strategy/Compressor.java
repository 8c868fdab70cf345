package headfirst.strategy;

public interface Compressor {
    byte[] compress(byte[] data);

    String extension();
}
