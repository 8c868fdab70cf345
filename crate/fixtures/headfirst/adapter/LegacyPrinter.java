package headfirst.adapter;

public class LegacyPrinter {
    public void printLegacy(char[] characters) {
        System.out.println(new String(characters));
    }
}
